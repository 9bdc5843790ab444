//! Weil sums `S_u(a, b) = Σ_x (-1)^Tr(a·x^(2^u+1) + b·x)` over GF(2^m).
//!
//! Sums are evaluated exactly by enumerating the field, and compared with the
//! closed forms available when `m / gcd(m, u)` is odd:
//!
//! * `S_u(a, 0) = 0` for `a ≠ 0`;
//! * `S_u(a, b) = S_u(1, b·γ⁻¹)` where `γ` is the unique solution of
//!   `γ^(2^u+1) = a`;
//! * `S_u(1, b) = 0` unless `Tr_e(b) = 1`, in which case it is `±2^((m+e)/2)`;
//! * `S_u(1, 1) = (-1)^((m²-e²)/(8e)) · 2^((m+e)/2)`.
//!
//! The relation defining `γ` is sometimes printed as `γ^(2^(u+1)) = a`; only
//! the exponent `2^u + 1` makes `γ` unique and the reduction valid, and that is
//! what is used here. Uniqueness is checked by exhaustive search.

use num_integer::Integer;
use rayon::prelude::*;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

/// A single Weil sum evaluation request. `e = gcd(m, u)` is derived.
#[derive(Clone, Copy, Debug)]
pub struct WeilSumQuery<'a> {
    ctx: &'a FieldContext,
    u: u32,
    a: FieldElement,
    b: FieldElement,
}

impl<'a> WeilSumQuery<'a> {
    pub fn new(ctx: &'a FieldContext, u: u32, a: FieldElement, b: FieldElement) -> Result<Self> {
        if u == 0 {
            return Err(Error::Precondition("u must be a positive integer".into()));
        }
        for x in [a, b] {
            ctx.element(u64::from(x.bits()))?;
        }
        Ok(WeilSumQuery { ctx, u, a, b })
    }

    pub fn u(&self) -> u32 {
        self.u
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }

    pub fn e(&self) -> u32 {
        self.ctx.m().gcd(&self.u)
    }

    /// Whether `m / e` is odd, the regime covered by the closed forms.
    pub fn in_odd_regime(&self) -> bool {
        (self.ctx.m() / self.e()) % 2 == 1
    }
}

/// `x^(2^u + 1)`.
fn quadratic_power(ctx: &FieldContext, x: FieldElement, u: u32) -> FieldElement {
    ctx.mul(ctx.frobenius(x, u), x)
}

/// Exact value of the sum by full enumeration of the field.
pub fn weil_sum_direct(q: &WeilSumQuery<'_>) -> i64 {
    let ctx = q.ctx;
    ctx.elements()
        .map(|x| {
            let arg = ctx.mul(q.a, quadratic_power(ctx, x, q.u)) + ctx.mul(q.b, x);
            if ctx.trace(arg) == 0 {
                1
            } else {
                -1
            }
        })
        .sum()
}

/// What the closed forms say about a sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prediction {
    /// A fully determined value.
    Exact(i64),
    /// The value is `+v` or `-v`; the sign is not determined.
    PlusMinus(i64),
    Zero,
    /// `m / e` is even; no closed form is claimed.
    NotApplicable,
}

impl Prediction {
    /// `None` when nothing is predicted.
    pub fn admits(&self, value: i64) -> Option<bool> {
        match *self {
            Prediction::Exact(v) => Some(value == v),
            Prediction::PlusMinus(v) => Some(value == v || value == -v),
            Prediction::Zero => Some(value == 0),
            Prediction::NotApplicable => None,
        }
    }
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prediction::Exact(v) => write!(f, "{v}"),
            Prediction::PlusMinus(v) => write!(f, "+-{v}"),
            Prediction::Zero => write!(f, "0"),
            Prediction::NotApplicable => write!(f, "n/a"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeilSumResult {
    pub value: i64,
    pub prediction: Prediction,
    /// `None` when the prediction is not applicable.
    pub agrees: Option<bool>,
}

/// `(-1)^((m² - e²) / (8e))`, the Jacobi symbol `(2 / (m/e))^e`.
pub fn jacobi_sign(m: u32, e: u32) -> Result<i64> {
    if e == 0 || m % e != 0 {
        return Err(Error::NotADivisor { e, m });
    }
    if (m / e) % 2 == 0 {
        return Err(Error::Precondition(format!("m/e = {} is even", m / e)));
    }
    let (m, e) = (u64::from(m), u64::from(e));
    let exponent = (m * m - e * e) / (8 * e);
    Ok(if exponent % 2 == 0 { 1 } else { -1 })
}

/// The unique `γ` with `γ^(2^u+1) = a`, found by search. Errors if the
/// solution is missing or not unique.
pub fn quadratic_root(ctx: &FieldContext, u: u32, a: FieldElement) -> Result<FieldElement> {
    let mut roots = ctx
        .elements()
        .skip(1)
        .filter(|&g| quadratic_power(ctx, g, u) == a);
    match (roots.next(), roots.next()) {
        (Some(g), None) => Ok(g),
        (None, _) => Err(Error::Precondition(format!("{a} has no (2^{u}+1)-th root"))),
        (Some(_), Some(_)) => Err(Error::Precondition(format!(
            "{a} has several (2^{u}+1)-th roots"
        ))),
    }
}

/// Closed-form prediction for a query.
pub fn weil_sum_prediction(q: &WeilSumQuery<'_>) -> Result<Prediction> {
    let ctx = q.ctx;
    if !q.in_odd_regime() {
        return Ok(Prediction::NotApplicable);
    }
    let m = ctx.m();
    let e = q.e();
    if q.a.is_zero() {
        // orthogonality of additive characters
        return Ok(if q.b.is_zero() {
            Prediction::Exact(1 << m)
        } else {
            Prediction::Zero
        });
    }
    if q.b.is_zero() {
        return Ok(Prediction::Zero);
    }
    // x ↦ x^(2^u+1) permutes the field here, so 1 is its own unique root
    let gamma = if q.a == FieldElement::ONE {
        FieldElement::ONE
    } else {
        quadratic_root(ctx, q.u, q.a)?
    };
    let reduced = ctx.mul(q.b, ctx.inv(gamma).expect("root is nonzero"));
    let magnitude = 1i64 << ((m + e) / 2);
    if ctx.relative_trace(reduced, e)? != FieldElement::ONE {
        Ok(Prediction::Zero)
    } else if reduced == FieldElement::ONE {
        Ok(Prediction::Exact(jacobi_sign(m, e)? * magnitude))
    } else {
        Ok(Prediction::PlusMinus(magnitude))
    }
}

/// Closed-form prediction together with the direct value and their agreement.
pub fn weil_sum_closed(q: &WeilSumQuery<'_>) -> Result<WeilSumResult> {
    let prediction = weil_sum_prediction(q)?;
    let value = weil_sum_direct(q);
    Ok(WeilSumResult {
        value,
        prediction,
        agrees: prediction.admits(value),
    })
}

/// Evaluates many sums for a fixed `(m, u)`.
///
/// Since `Tr(c·y)` is the parity of `y & L(c)` where `L(c)_i = Tr(c·α^i)`,
/// each sum reduces to `2^m` popcounts against a precomputed table of
/// `x^(2^u+1)`. Still a full enumeration of the field.
pub struct WeilSweep<'a> {
    ctx: &'a FieldContext,
    u: u32,
    powers: Vec<u32>,
}

impl<'a> WeilSweep<'a> {
    pub fn new(ctx: &'a FieldContext, u: u32) -> Result<Self> {
        if u == 0 {
            return Err(Error::Precondition("u must be a positive integer".into()));
        }
        let powers = ctx
            .elements()
            .map(|x| quadratic_power(ctx, x, u).bits())
            .collect();
        Ok(WeilSweep { ctx, u, powers })
    }

    fn linear_form(&self, c: FieldElement) -> u32 {
        (0..self.ctx.m())
            .filter(|&i| self.ctx.trace(self.ctx.mul(c, FieldElement::from_bits(1 << i))) == 1)
            .fold(0, |acc, i| acc | 1 << i)
    }

    pub fn sum(&self, a: FieldElement, b: FieldElement) -> i64 {
        let la = self.linear_form(a);
        let lb = self.linear_form(b);
        let negatives: u64 = self
            .powers
            .iter()
            .enumerate()
            .map(|(x, &y)| u64::from(((y & la) ^ (x as u32 & lb)).count_ones() & 1))
            .sum();
        self.ctx.order() as i64 - 2 * negatives as i64
    }

    fn row(&self, a: FieldElement, b: FieldElement) -> Result<SweepRow> {
        let q = WeilSumQuery::new(self.ctx, self.u, a, b)?;
        let prediction = weil_sum_prediction(&q)?;
        let direct = self.sum(a, b);
        Ok(SweepRow {
            m: self.ctx.m(),
            u: self.u,
            e: q.e(),
            a: a.bits(),
            b: b.bits(),
            direct,
            prediction,
            agrees: prediction.admits(direct),
        })
    }

    /// Rows for every `(a, 0)` with `a ≠ 0` followed by every `(1, b)`.
    pub fn axis_rows(&self) -> Result<Vec<SweepRow>> {
        let ctx = self.ctx;
        let pairs: Vec<(FieldElement, FieldElement)> = ctx
            .elements()
            .skip(1)
            .map(|a| (a, FieldElement::ZERO))
            .chain(ctx.elements().map(|b| (FieldElement::ONE, b)))
            .collect();
        pairs.into_par_iter().map(|(a, b)| self.row(a, b)).collect()
    }

    /// Rows for the full `(a, b)` grid; `4^m` sums, for small fields.
    pub fn grid_rows(&self) -> Result<Vec<SweepRow>> {
        let ctx = self.ctx;
        let pairs: Vec<(FieldElement, FieldElement)> = ctx
            .elements()
            .flat_map(|a| ctx.elements().map(move |b| (a, b)))
            .collect();
        pairs.into_par_iter().map(|(a, b)| self.row(a, b)).collect()
    }
}

/// One line of the sweep CSV.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub m: u32,
    pub u: u32,
    pub e: u32,
    pub a: u32,
    pub b: u32,
    pub direct: i64,
    pub prediction: Prediction,
    pub agrees: Option<bool>,
}

pub const SWEEP_CSV_HEADER: &str = "m,u,e,a,b,direct,prediction,agrees";

impl SweepRow {
    pub fn to_csv(&self) -> String {
        let agrees = match self.agrees {
            Some(true) => "true",
            Some(false) => "false",
            None => "n/a",
        };
        format!(
            "{},{},{},{},{},{},{},{}",
            self.m, self.u, self.e, self.a, self.b, self.direct, self.prediction, agrees
        )
    }
}

/// `u` in `1..m` with `gcd(u, m) = 1`. The sums depend on `u` only modulo `m`.
pub fn coprime_exponents(m: u32) -> Vec<u32> {
    (1..m).filter(|u| u.gcd(&m) == 1).collect()
}
