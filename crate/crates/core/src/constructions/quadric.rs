//! Two-weight codes from the zero sets of quadratic forms.
//!
//! Elliptic: over `GF(2^(2k))`, the points `x ≠ 0` whose norm `x^(2^k+1)` to
//! `GF(2^k)` has trace 0, with codewords `(Tr(bx))_x`. Hyperbolic: the points
//! `(x, y) ≠ 0` of `GF(2^k)²` with `Tr(xy) = 0`, with codewords
//! `(Tr(ax) + Tr(by))_{(x,y)}`. Nothing here is assumed from theory; the
//! report certifies a code only after enumerating it.

use serde::{Deserialize, Serialize};

use super::extension::Check;
use super::DefiningSet;
use crate::codes::{dual_summary, BinaryVector, LinearCode};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "kebab-case")]
pub enum QuadricVariant {
    Elliptic,
    Hyperbolic,
}

impl QuadricVariant {
    pub fn name(self) -> &'static str {
        match self {
            QuadricVariant::Elliptic => "elliptic",
            QuadricVariant::Hyperbolic => "hyperbolic",
        }
    }

    /// Expected `[n, k, w1, w2]`. Enumeration decides; these are only compared.
    pub fn expected_parameters(self, k: u32) -> [usize; 4] {
        let big = 1usize << (2 * k - 1);
        let half = 1usize << (k - 1);
        let mid = 1usize << (2 * k - 2);
        match self {
            QuadricVariant::Elliptic => [big - half - 1, 2 * k as usize, mid - half, mid],
            QuadricVariant::Hyperbolic => [big + half - 1, 2 * k as usize, mid, mid + half],
        }
    }
}

impl std::str::FromStr for QuadricVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "elliptic" => Ok(QuadricVariant::Elliptic),
            "hyperbolic" => Ok(QuadricVariant::Hyperbolic),
            other => Err(Error::parse("variant", format!("unknown quadric variant {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuadricReport {
    pub variant: QuadricVariant,
    pub k_param: u32,
    /// Modulus of the field the points were drawn from.
    pub modulus: u64,
    pub code: LinearCode,
    pub weights: Vec<usize>,
    pub checks: Vec<Check>,
}

impl QuadricReport {
    /// Two weights, projective and `w1 + w2 = n + 1`, all by enumeration.
    pub fn certified(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The code, only if certified.
    pub fn certified_code(&self) -> Option<&LinearCode> {
        self.certified().then_some(&self.code)
    }
}

/// Builds the elliptic code over `GF(2^(2k))` or the hyperbolic code over
/// `GF(2^k)`, using the default modulus unless one is given for that field.
pub fn quadric_two_weight(k: u32, variant: QuadricVariant, modulus: Option<u64>) -> Result<QuadricReport> {
    if k < 2 {
        return Err(Error::Precondition(format!("quadric codes need k >= 2, got {k}")));
    }
    let (code, modulus) = match variant {
        QuadricVariant::Elliptic => {
            let ctx = FieldContext::new(2 * k, modulus)?;
            (elliptic(&ctx, k)?, ctx.modulus())
        }
        QuadricVariant::Hyperbolic => {
            let ctx = FieldContext::new(k, modulus)?;
            (hyperbolic(&ctx)?, ctx.modulus())
        }
    };
    let weights = code.weight_distribution()?.nonzero_weights();
    let two = weights.len() == 2;
    let checks = vec![
        Check::new("two nonzero weights", two, format!("{weights:?}")),
        Check::new("projective", dual_summary(&code)?.projective, format!("[{}, {}]", code.n(), code.k())),
        Check::new(
            "weights sum to length + 1",
            two && weights[0] + weights[1] == code.n() + 1,
            format!("{weights:?}, length {}", code.n()),
        ),
    ];
    Ok(QuadricReport {
        variant,
        k_param: k,
        modulus,
        code,
        weights,
        checks,
    })
}

fn elliptic(ctx: &FieldContext, k: u32) -> Result<LinearCode> {
    let mut points = Vec::new();
    for x in ctx.elements().skip(1) {
        let norm = ctx.mul(ctx.frobenius(x, k), x);
        if ctx.subfield_trace(norm, k)? == 0 {
            points.push(x);
        }
    }
    super::defining_set_code(&DefiningSet::custom(ctx, points)?)
}

fn hyperbolic(ctx: &FieldContext) -> Result<LinearCode> {
    let points: Vec<(FieldElement, FieldElement)> = ctx
        .elements()
        .flat_map(|x| ctx.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| !(x.is_zero() && y.is_zero()) && ctx.trace(ctx.mul(x, y)) == 0)
        .collect();
    let m = ctx.m();
    let rows = (0..2 * m)
        .map(|i| {
            let beta = FieldElement::from_bits(1 << (i % m));
            BinaryVector::from_bits(points.iter().map(|&(x, y)| {
                let coord = if i < m { x } else { y };
                ctx.trace(ctx.mul(beta, coord)) == 1
            }))
        })
        .collect();
    LinearCode::from_spanning_rows(points.len(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn elliptic_k2() {
        let r = quadric_two_weight(2, QuadricVariant::Elliptic, None).unwrap();
        assert!(r.certified(), "{:?}", r.checks);
        assert_eq!((r.code.n(), r.code.k()), (5, 4));
        let d = r.code.weight_distribution().unwrap();
        assert_eq!(d.count(2), &BigUint::from(10u32));
        assert_eq!(d.count(4), &BigUint::from(5u32));
    }

    #[test]
    fn k3_parameters_match_expectations() {
        for (variant, weights) in [
            (QuadricVariant::Elliptic, vec![12, 16]),
            (QuadricVariant::Hyperbolic, vec![16, 20]),
        ] {
            let r = quadric_two_weight(3, variant, None).unwrap();
            assert!(r.certified(), "{:?}", r.checks);
            assert_eq!(r.weights, weights);
            let [n, k, w1, w2] = variant.expected_parameters(3);
            assert_eq!((r.code.n(), r.code.k()), (n, k));
            assert_eq!(r.weights, vec![w1, w2]);
        }
    }

    #[test]
    fn hyperbolic_even_k_also_certifies() {
        let r = quadric_two_weight(2, QuadricVariant::Hyperbolic, None).unwrap();
        assert!(r.certified(), "{:?}", r.checks);
        assert_eq!((r.code.n(), r.code.k()), (9, 4));
        assert_eq!(r.weights, vec![4, 6]);
    }

    #[test]
    fn rejects_small_k_and_unknown_variant() {
        assert!(quadric_two_weight(1, QuadricVariant::Elliptic, None).is_err());
        assert!("parabolic".parse::<QuadricVariant>().is_err());
        assert_eq!("hyperbolic".parse::<QuadricVariant>().unwrap(), QuadricVariant::Hyperbolic);
    }
}
