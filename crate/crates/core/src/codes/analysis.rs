//! Projectivity and the structure of projective three-weight codes that
//! contain the all-ones word.
//!
//! For such an `[n, k, d]` code the weights are forced to `d`, `n - d`, `n`,
//! the enumerator is `1 + (2^(k-1)-1)(z^d + z^(n-d)) + z^n`, `d` is the
//! smaller root of `4d² - 4nd + 2^(k-1) n(n-1)/(2^(k-1)-1) = 0`, and every
//! dual count has the closed form
//!
//! ```text
//! A⊥_2r = 2^-(k-1) ( C(n,2r) + (2^(k-1)-1) Σ_{i+j=r} (-1)^i C(d,i) C(n-2d,2j) )
//! ```
//!
//! with `0 ≤ i ≤ d` and `0 ≤ j ≤ ⌊n/2⌋ - d`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{LinearCode, WeightDistribution, DUAL_ENUMERATION_CAP};
use crate::combinatorics::binomial_row;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSummary {
    pub distribution: WeightDistribution,
    /// `None` when the dual is the zero code (`k = n`): the minimum distance
    /// is taken as infinite and the code as projective.
    pub min_distance: Option<usize>,
    pub projective: bool,
    /// Agreement of the transform with an explicit enumeration of the dual,
    /// when the dual is small enough to enumerate.
    pub direct_agrees: Option<bool>,
}

/// Dual distribution through the MacWilliams transform, plus projectivity
/// (`A⊥_1 = A⊥_2 = 0`). Duals of dimension at most
/// [`DUAL_ENUMERATION_CAP`] are also enumerated and compared.
pub fn dual_summary(code: &LinearCode) -> Result<DualSummary> {
    let distribution = code.weight_distribution()?.macwilliams_dual()?;
    let dual_k = code.n() - code.k();
    let direct_agrees = if (1..=DUAL_ENUMERATION_CAP).contains(&dual_k) {
        let dual = code.dual()?;
        Some(dual.weight_distribution()? == &distribution)
    } else {
        None
    };
    let min_distance = distribution.min_nonzero_weight();
    let projective = distribution.count(1).is_zero()
        && (distribution.n() < 2 || distribution.count(2).is_zero());
    Ok(DualSummary {
        distribution,
        min_distance,
        projective,
        direct_agrees,
    })
}

/// Closed-form dual counts of a projective three-weight code with the
/// all-ones word.
#[derive(Clone, Debug)]
pub struct DualClosedForm {
    n: usize,
    k: usize,
    d: usize,
    row_n: Vec<BigInt>,
    row_d: Vec<BigInt>,
    row_rest: Vec<BigInt>,
}

impl DualClosedForm {
    pub fn new(n: usize, k: usize, d: usize) -> Self {
        assert!(2 * d <= n, "minimum weight {d} exceeds half the length {n}");
        DualClosedForm {
            n,
            k,
            d,
            row_n: binomial_row(n),
            row_d: binomial_row(d),
            row_rest: binomial_row(n - 2 * d),
        }
    }

    /// Predicted `A⊥_{2r}`, as an exact rational.
    pub fn count(&self, r: usize) -> BigRational {
        if 2 * r > self.n {
            return BigRational::zero();
        }
        let half = BigInt::one() << (self.k - 1);
        let j_max = self.n / 2 - self.d;
        let mut sum = BigInt::zero();
        for i in 0..=r.min(self.d) {
            let j = r - i;
            if j > j_max || 2 * j > self.n - 2 * self.d {
                continue;
            }
            let term = &self.row_d[i] * &self.row_rest[2 * j];
            if i % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        let numerator = &self.row_n[2 * r] + (&half - 1) * sum;
        BigRational::new(numerator, half)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    NotProjective,
    /// Number of distinct nonzero weights observed.
    WeightCount(usize),
    /// The all-ones word is absent.
    NoFullWeightWord,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThreeWeightReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub weights: [usize; 3],
    /// `(n - √(n(2^(k-1)-n)/(2^(k-1)-1)))/2`, for display.
    pub predicted_min_weight: f64,
    /// The exact identity `(n-2d)²(2^(k-1)-1) = n(2^(k-1)-n)` behind the
    /// weight formula.
    pub weight_formula_holds: bool,
    pub weights_complementary: bool,
    pub enumerator_matches: bool,
    /// Closed-form `A⊥_{2r}` for `r = 0..=⌊n/2⌋`.
    pub dual_closed_form: Vec<BigRational>,
    /// First weight at which the closed form and the transform disagree.
    pub first_dual_mismatch: Option<usize>,
}

impl ThreeWeightReport {
    pub fn passed(&self) -> bool {
        self.weight_formula_holds
            && self.weights_complementary
            && self.enumerator_matches
            && self.first_dual_mismatch.is_none()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ThreeWeightProfile {
    HypothesesFail(Vec<Hypothesis>),
    Checked(Box<ThreeWeightReport>),
}

impl ThreeWeightProfile {
    pub fn passed(&self) -> bool {
        matches!(self, ThreeWeightProfile::Checked(r) if r.passed())
    }

    pub fn report(&self) -> Option<&ThreeWeightReport> {
        match self {
            ThreeWeightProfile::Checked(r) => Some(r),
            ThreeWeightProfile::HypothesesFail(_) => None,
        }
    }
}

/// Checks the forced weights, enumerator and closed-form dual distribution of
/// a projective three-weight code containing the all-ones word. A binary code
/// has at most one word of full weight.
pub fn three_weight_profile(code: &LinearCode) -> Result<ThreeWeightProfile> {
    let dist = code.weight_distribution()?;
    let summary = dual_summary(code)?;
    let (n, k) = (code.n(), code.k());

    let mut failed = Vec::new();
    if !summary.projective {
        failed.push(Hypothesis::NotProjective);
    }
    let weights = dist.nonzero_weights();
    if weights.len() != 3 {
        failed.push(Hypothesis::WeightCount(weights.len()));
    }
    if dist.count(n).is_zero() {
        failed.push(Hypothesis::NoFullWeightWord);
    }
    if !failed.is_empty() {
        return Ok(ThreeWeightProfile::HypothesesFail(failed));
    }

    let d = weights[0];
    let half = BigUint::one() << (k - 1);
    let light = &half - 1u32;
    let weight_formula_holds = {
        let gap = BigInt::from(n as i64 - 2 * d as i64);
        let lhs = &gap * &gap * BigInt::from(light.clone());
        let rhs = BigInt::from(n) * (BigInt::from(half.clone()) - BigInt::from(n));
        lhs == rhs
    };
    let predicted_min_weight = {
        let h = 2f64.powi(k as i32 - 1);
        let nf = n as f64;
        (nf - (nf * (h - nf) / (h - 1.0)).sqrt()) / 2.0
    };
    let weights_complementary = weights == [d, n - d, n];
    let enumerator_matches = weights_complementary
        && dist.count(d) == &light
        && dist.count(n - d) == &light
        && dist.count(n).is_one();

    let (dual_closed_form, first_dual_mismatch) = if 2 * d <= n {
        let form = DualClosedForm::new(n, k, d);
        let closed: Vec<BigRational> = (0..=n / 2).map(|r| form.count(r)).collect();
        let mismatch = (0..=n).find(|&w| {
            let observed = BigRational::from_integer(BigInt::from(summary.distribution.count(w).clone()));
            let predicted = if w % 2 == 0 { closed[w / 2].clone() } else { BigRational::zero() };
            observed != predicted
        });
        (closed, mismatch)
    } else {
        (Vec::new(), Some(0))
    };

    Ok(ThreeWeightProfile::Checked(Box::new(ThreeWeightReport {
        n,
        k,
        d,
        weights: [weights[0], weights[1], weights[2]],
        predicted_min_weight,
        weight_formula_holds,
        weights_complementary,
        enumerator_matches,
        dual_closed_form,
        first_dual_mismatch,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::BinaryVector;

    fn even_weight(n: usize) -> LinearCode {
        let rows = (1..n)
            .map(|i| {
                let mut v = BinaryVector::zeros(n);
                v.set(0, true);
                v.set(i, true);
                v
            })
            .collect();
        LinearCode::new(n, rows).unwrap()
    }

    #[test]
    fn closed_form_values() {
        let f = DualClosedForm::new(6, 5, 2);
        assert_eq!(f.count(2), BigRational::zero());
        assert_eq!(f.count(3), BigRational::one());
        let g = DualClosedForm::new(28, 7, 12);
        assert_eq!(g.count(2), BigRational::from_integer(315.into()));
        assert_eq!(g.count(0), BigRational::one());
        assert_eq!(g.count(1), BigRational::zero());
    }

    #[test]
    fn even_weight_code_profile() {
        let code = even_weight(6);
        let s = dual_summary(&code).unwrap();
        assert!(s.projective);
        assert_eq!(s.min_distance, Some(6));
        assert_eq!(s.direct_agrees, Some(true));
        let p = three_weight_profile(&code).unwrap();
        let r = p.report().unwrap();
        assert!(p.passed(), "{r:?}");
        assert_eq!(r.weights, [2, 4, 6]);
        assert!((r.predicted_min_weight - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_and_repeated_columns_break_projectivity() {
        let zero_col = LinearCode::new(
            4,
            vec![
                BinaryVector::from_bits([true, true, false, false]),
                BinaryVector::from_bits([false, true, true, false]),
            ],
        )
        .unwrap();
        let s = dual_summary(&zero_col).unwrap();
        assert!(!s.projective);
        assert!(s.distribution.count(1) >= &BigUint::one());

        let repeated = LinearCode::new(
            4,
            vec![
                BinaryVector::from_bits([true, true, false, true]),
                BinaryVector::from_bits([false, false, true, true]),
            ],
        )
        .unwrap();
        let s = dual_summary(&repeated).unwrap();
        assert!(!s.projective);
        assert!(s.distribution.count(2) >= &BigUint::one());
    }

    #[test]
    fn full_space_is_vacuously_projective() {
        let rows = (0..3)
            .map(|i| {
                let mut v = BinaryVector::zeros(3);
                v.set(i, true);
                v
            })
            .collect();
        let s = dual_summary(&LinearCode::new(3, rows).unwrap()).unwrap();
        assert!(s.projective);
        assert_eq!(s.min_distance, None);
        assert_eq!(s.direct_agrees, None);
    }

    #[test]
    fn missing_all_ones_fails_hypotheses() {
        // simplex [7,3]: one weight, no all-ones word
        let rows = vec![
            BinaryVector::from_bits("1010101".chars().map(|c| c == '1')),
            BinaryVector::from_bits("0110011".chars().map(|c| c == '1')),
            BinaryVector::from_bits("0001111".chars().map(|c| c == '1')),
        ];
        let p = three_weight_profile(&LinearCode::new(7, rows).unwrap()).unwrap();
        assert_eq!(
            p,
            ThreeWeightProfile::HypothesesFail(vec![
                Hypothesis::WeightCount(1),
                Hypothesis::NoFullWeightWord
            ])
        );
    }
}
