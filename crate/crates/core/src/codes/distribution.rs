use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt::Write as _;

use crate::combinatorics::binomial_row;
use crate::error::{Error, Result};

/// Exact weight counts `A_0..A_n` of a binary `[n, k]` code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    n: usize,
    k: usize,
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    /// Checks `A_0 = 1` and `Σ A_i = 2^k`.
    pub fn new(n: usize, k: usize, counts: Vec<BigUint>) -> Result<Self> {
        let d = Self::from_raw(n, k, counts)?;
        if !d.counts[0].is_one() {
            return Err(Error::InconsistentDistribution(format!(
                "A_0 = {}, expected 1",
                d.counts[0]
            )));
        }
        let total: BigUint = d.counts.iter().sum();
        if total != BigUint::one() << k {
            return Err(Error::InconsistentDistribution(format!(
                "counts sum to {total}, expected 2^{k}"
            )));
        }
        Ok(d)
    }

    /// Only checks the vector length. For diagnostics on distributions that
    /// may not come from a code.
    pub fn from_raw(n: usize, k: usize, counts: Vec<BigUint>) -> Result<Self> {
        if counts.len() != n + 1 {
            return Err(Error::InconsistentDistribution(format!(
                "{} counts for length {n}",
                counts.len()
            )));
        }
        Ok(WeightDistribution { n, k, counts })
    }

    pub fn from_u64(n: usize, k: usize, counts: &[u64]) -> Result<Self> {
        Self::new(n, k, counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, w: usize) -> &BigUint {
        &self.counts[w]
    }

    /// Nonzero weights `i > 0` with `A_i ≠ 0`, ascending.
    pub fn nonzero_weights(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| !self.counts[i].is_zero()).collect()
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        (1..=self.n).find(|&i| !self.counts[i].is_zero())
    }

    /// `A_w = A_{n-w}` for all `w`.
    pub fn is_palindromic(&self) -> bool {
        (0..=self.n).all(|w| self.counts[w] == self.counts[self.n - w])
    }

    /// Enumerator polynomial, e.g. `1 + 15z^2 + 15z^4 + z^6`.
    pub fn enumerator(&self) -> String {
        self.format_enumerator(|w| format!("^{w}"))
    }

    /// Enumerator with superscript exponents, e.g. `1 + 15z² + 15z⁴ + z⁶`.
    pub fn enumerator_pretty(&self) -> String {
        const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
        self.format_enumerator(|w| {
            w.to_string()
                .chars()
                .map(|c| SUP[c.to_digit(10).unwrap() as usize])
                .collect()
        })
    }

    fn format_enumerator(&self, exponent: impl Fn(usize) -> String) -> String {
        let mut out = String::new();
        for (w, c) in self.counts.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            match (w, c.is_one()) {
                (0, _) => write!(out, "{c}").unwrap(),
                (1, true) => out.push('z'),
                (1, false) => write!(out, "{c}z").unwrap(),
                (_, true) => write!(out, "z{}", exponent(w)).unwrap(),
                (_, false) => write!(out, "{c}z{}", exponent(w)).unwrap(),
            }
        }
        out
    }

    /// `weight,count` lines for the nonzero counts, with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,count\n");
        for (w, c) in self.counts.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            writeln!(out, "{w},{c}").unwrap();
        }
        out
    }

    /// Distribution of the dual code, via
    /// `P⊥(z) = 2^-k (1+z)^n P((1-z)/(1+z))`, i.e.
    /// `A⊥_j = 2^-k Σ_i A_i [z^j] (1-z)^i (1+z)^(n-i)`, in exact integers.
    ///
    /// Fails when a result is fractional or negative, which means the input
    /// was not the distribution of a linear code.
    pub fn macwilliams_dual(&self) -> Result<WeightDistribution> {
        let n = self.n;
        let last = (0..=n).rev().find(|&i| !self.counts[i].is_zero()).unwrap_or(0);
        let mut total = vec![BigInt::zero(); n + 1];
        // kernel holds the coefficients of (1-z)^i (1+z)^(n-i)
        let mut kernel = binomial_row(n);
        for i in 0..=last {
            if !self.counts[i].is_zero() {
                let a = BigInt::from(self.counts[i].clone());
                for (t, c) in total.iter_mut().zip(&kernel) {
                    *t += &a * c;
                }
            }
            if i < n {
                kernel = shift_factor(&kernel);
            }
        }
        let scale = BigInt::one() << self.k;
        let mut counts = Vec::with_capacity(n + 1);
        for (j, t) in total.into_iter().enumerate() {
            let (q, r) = t.div_rem(&scale);
            if !r.is_zero() || q.sign() == Sign::Minus {
                return Err(Error::InconsistentDistribution(format!(
                    "dual count at weight {j} would be {t}/2^{}",
                    self.k
                )));
            }
            counts.push(q.to_biguint().unwrap());
        }
        let dual_k = n.checked_sub(self.k).ok_or_else(|| {
            Error::InconsistentDistribution(format!("dimension {} exceeds length {n}", self.k))
        })?;
        WeightDistribution::new(n, dual_k, counts)
    }
}

/// Multiplies a polynomial by `(1-z)/(1+z)`. The input must be divisible by
/// `1+z`, which holds for `(1-z)^i (1+z)^(n-i)` with `i < n`.
fn shift_factor(p: &[BigInt]) -> Vec<BigInt> {
    let n = p.len() - 1;
    let mut quotient = Vec::with_capacity(n);
    let mut prev = BigInt::zero();
    for c in &p[..n] {
        prev = c - &prev;
        quotient.push(prev.clone());
    }
    debug_assert_eq!(&p[n] - &prev, BigInt::zero());
    let mut out = Vec::with_capacity(n + 1);
    let mut before = BigInt::zero();
    for q in quotient {
        out.push(&q - &before);
        before = q;
    }
    out.push(-before);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Moment {
    First,
    Second,
    Third,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlessVerdict {
    pub first: bool,
    pub second: bool,
    pub third: bool,
}

impl PlessVerdict {
    pub fn passed(&self) -> bool {
        self.first && self.second && self.third
    }

    /// The first violated moment, if any.
    pub fn violated(&self) -> Option<Moment> {
        [(self.first, Moment::First), (self.second, Moment::Second), (self.third, Moment::Third)]
            .into_iter()
            .find(|(ok, _)| !ok)
            .map(|(_, m)| m)
    }
}

/// Checks the first three power moments of `code` against `A⊥_1` and `A⊥_2`
/// of `dual`:
///
/// * `Σ A_j = 2^k`
/// * `Σ j·A_j = 2^(k-1) (n - A⊥_1)`
/// * `Σ j²·A_j = 2^(k-2) (n(n+1) - 2n·A⊥_1 + 2·A⊥_2)`
pub fn pless_check(code: &WeightDistribution, dual: &WeightDistribution) -> PlessVerdict {
    let n = code.n;
    let k = code.k;
    let a1 = BigInt::from(dual.counts.get(1).cloned().unwrap_or_default());
    let a2 = BigInt::from(dual.counts.get(2).cloned().unwrap_or_default());
    let (mut m0, mut m1, mut m2) = (BigInt::zero(), BigInt::zero(), BigInt::zero());
    for (j, c) in code.counts.iter().enumerate() {
        let c = BigInt::from(c.clone());
        m1 += &c * j;
        m2 += &c * j * j;
        m0 += c;
    }
    let nn = BigInt::from(n);
    let pow_k = BigInt::one() << k;
    // scaled by 2 and 4 so that k = 1 stays integral
    let first = m0 == pow_k;
    let second = m1 * 2 == &pow_k * (&nn - &a1);
    let third = m2 * 4 == &pow_k * (&nn * (&nn + 1) - 2 * &nn * &a1 + 2 * &a2);
    PlessVerdict {
        first,
        second,
        third,
    }
}
