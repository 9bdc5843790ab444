//! Support designs of binary codes: extraction, exhaustive t-design
//! verification, λ predictions for projective three-weight codes with the
//! all-ones word, and the Assmus–Mattson criterion.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::codes::{DualClosedForm, LinearCode, WeightDistribution, DUAL_ENUMERATION_CAP};
use crate::combinatorics::{binomial, next_subset, rank_subset};
use crate::error::{Error, Result};

/// Largest number of t-subsets counted explicitly.
pub const SUBSET_COUNT_CAP: usize = 1 << 26;

/// Blocks are sorted 1-based point sets of size `r` on `1..=v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Design {
    pub v: usize,
    pub r: usize,
    /// Strength the blocks were tested at, once tested.
    pub t: Option<usize>,
    pub lambda: Option<u64>,
    pub blocks: Vec<Vec<usize>>,
}

impl Design {
    /// Validates sizes, ranges, ordering and distinctness of the blocks.
    pub fn new(v: usize, r: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (i, b) in blocks.iter().enumerate() {
            if b.len() != r {
                return Err(Error::parse("blocks", format!("block {i} has {} points, expected {r}", b.len())));
            }
            if b.iter().any(|&p| p == 0 || p > v) {
                return Err(Error::parse("blocks", format!("block {i} has a point outside 1..={v}")));
            }
            if b.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::parse("blocks", format!("block {i} is not strictly increasing")));
            }
            if !seen.insert(b) {
                return Err(Error::parse("blocks", format!("block {i} is repeated")));
            }
        }
        Ok(Design {
            v,
            r,
            t: None,
            lambda: None,
            blocks,
        })
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Records the strength and verified λ.
    pub fn with_verdict(mut self, t: usize, verdict: &DesignVerdict) -> Self {
        self.t = Some(t);
        self.lambda = verdict.lambda;
        self
    }
}

/// Supports of all weight-`w` codewords, in sorted order.
pub fn support_blocks(code: &LinearCode, w: usize) -> Result<Design> {
    let words = code.codewords_of_weight(w)?;
    if words.is_empty() {
        return Err(Error::EmptyDesign(w));
    }
    let mut blocks: Vec<Vec<usize>> = words.iter().map(|c| c.support()).collect();
    blocks.sort();
    Design::new(code.n(), w, blocks)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// 1-based points.
    pub subset: Vec<usize>,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignVerdict {
    pub is_design: bool,
    /// `r = v` or fewer than two blocks; neither a pass nor a failure.
    pub degenerate: bool,
    pub lambda: Option<u64>,
    /// Least-covered t-subset (lexicographically first among ties) when the
    /// counts differ.
    pub witness: Option<Witness>,
    /// `b·C(r,t) = λ·C(v,t)`.
    pub identity_ok: bool,
    /// Set when `b·C(r,t)` is not divisible by `C(v,t)`, which rules out a
    /// design without counting.
    pub non_integral: bool,
}

impl DesignVerdict {
    fn degenerate() -> Self {
        DesignVerdict {
            is_design: false,
            degenerate: true,
            lambda: None,
            witness: None,
            identity_ok: false,
            non_integral: false,
        }
    }
}

/// Counts, for every t-subset of points, the blocks containing it.
pub fn verify_t_design(design: &Design, t: usize) -> Result<DesignVerdict> {
    let (v, r, b) = (design.v, design.r, design.blocks.len());
    // t = r is allowed: the design is then complete iff every t-subset is a block
    if t == 0 || t > r {
        return Err(Error::Precondition(format!("need 0 < t <= r, got t = {t}, r = {r}")));
    }
    if r >= v || b < 2 {
        return Ok(DesignVerdict::degenerate());
    }
    let total = binomial(b, 1) * binomial(r, t);
    let subsets = binomial(v, t);
    if !(&total % &subsets).is_zero() {
        return Ok(DesignVerdict {
            is_design: false,
            degenerate: false,
            lambda: None,
            witness: None,
            identity_ok: false,
            non_integral: true,
        });
    }
    let n_subsets = subsets
        .to_usize()
        .filter(|&s| s <= SUBSET_COUNT_CAP)
        .ok_or_else(|| Error::Precondition(format!("C({v},{t}) subsets exceed the counting cap")))?;

    let counts = if t == 2 { pair_counts(design) } else { subset_counts(design, t, n_subsets) };

    let first: Vec<usize> = (0..t).collect();
    let lambda = counts[rank_of(&first, v, t)];
    let mut min = (lambda, first.clone());
    let mut uniform = true;
    let mut s = first;
    while next_subset(&mut s, v) {
        let c = counts[rank_of(&s, v, t)];
        uniform &= c == lambda;
        if c < min.0 {
            min = (c, s.clone());
        }
    }
    if !uniform {
        return Ok(DesignVerdict {
            is_design: false,
            degenerate: false,
            lambda: None,
            witness: Some(Witness {
                subset: min.1.iter().map(|p| p + 1).collect(),
                count: u64::from(min.0),
            }),
            identity_ok: false,
            non_integral: false,
        });
    }
    let lambda = u64::from(lambda);
    Ok(DesignVerdict {
        is_design: true,
        degenerate: false,
        lambda: Some(lambda),
        witness: None,
        identity_ok: total == BigUint::from(lambda) * subsets,
        non_integral: false,
    })
}

fn rank_of(s: &[usize], v: usize, t: usize) -> usize {
    if t == 2 {
        s[0] * v + s[1]
    } else {
        rank_subset(s, v)
    }
}

/// `v × v` co-occurrence counts, indexed `a·v + b` for `a < b` (0-based).
fn pair_counts(design: &Design) -> Vec<u32> {
    let v = design.v;
    let mut counts = vec![0u32; v * v];
    for block in &design.blocks {
        for (i, &a) in block.iter().enumerate() {
            let row = (a - 1) * v;
            for &b in &block[i + 1..] {
                counts[row + b - 1] += 1;
            }
        }
    }
    counts
}

fn subset_counts(design: &Design, t: usize, n_subsets: usize) -> Vec<u32> {
    let v = design.v;
    let mut counts = vec![0u32; n_subsets];
    let mut idx: Vec<usize> = (0..t).collect();
    let mut points = vec![0usize; t];
    for block in &design.blocks {
        idx.iter_mut().enumerate().for_each(|(i, x)| *x = i);
        loop {
            for (p, &i) in points.iter_mut().zip(&idx) {
                *p = block[i] - 1;
            }
            counts[rank_subset(&points, v)] += 1;
            if !next_subset(&mut idx, block.len()) {
                break;
            }
        }
    }
    counts
}

/// An exact λ prediction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaPrediction {
    pub value: BigRational,
}

impl LambdaPrediction {
    pub fn is_integral(&self) -> bool {
        self.value.is_integer()
    }

    pub fn as_u64(&self) -> Option<u64> {
        self.is_integral().then(|| self.value.to_integer().to_u64()).flatten()
    }
}

impl std::fmt::Display for LambdaPrediction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `(2^(k-1)-1)·w(w-1) / (n(n-1))` for a weight of a projective three-weight
/// `[n, k]` code containing the all-ones word.
pub fn predicted_lambda(n: usize, k: usize, w: usize) -> LambdaPrediction {
    let light = (BigInt::one() << (k - 1)) - 1;
    let num = light * BigInt::from(w) * BigInt::from(w.saturating_sub(1));
    let den = BigInt::from(n) * BigInt::from(n - 1);
    LambdaPrediction {
        value: BigRational::new(num, den),
    }
}

/// `2r(2r-1)/(n(n-1)) · A⊥_{2r}` with the closed-form dual count, for
/// `2 ≤ r ≤ ⌊n/2⌋ - 1`.
pub fn predicted_dual_lambda(n: usize, k: usize, d: usize, r: usize) -> Result<LambdaPrediction> {
    if r < 2 || r + 1 > n / 2 {
        return Err(Error::Precondition(format!(
            "dual half-weight r = {r} outside 2..={}",
            (n / 2).saturating_sub(1)
        )));
    }
    let count = DualClosedForm::new(n, k, d).count(r);
    let w = 2 * r;
    let factor = BigRational::new(BigInt::from(w * (w - 1)), BigInt::from(n) * BigInt::from(n - 1));
    Ok(LambdaPrediction { value: factor * count })
}

/// Whether the code is projective with three nonzero weights and the
/// all-ones word, judged from its distribution and the transform.
pub fn lambda_hypotheses_hold(code: &LinearCode) -> Result<bool> {
    let dist = code.weight_distribution()?;
    let dual = dist.macwilliams_dual()?;
    let projective = dual.count(1).is_zero() && (code.n() < 2 || dual.count(2).is_zero());
    Ok(projective && dist.nonzero_weights().len() == 3 && dist.count(code.n()).is_one())
}

/// Code-side support design at one weight, checked against the prediction
/// when the code meets the hypotheses.
#[derive(Clone, Debug)]
pub struct SupportDesignReport {
    pub weight: usize,
    pub design: Design,
    pub verdict: DesignVerdict,
    pub predicted: Option<LambdaPrediction>,
}

impl SupportDesignReport {
    /// Verified design whose λ equals the prediction; `None` without a
    /// prediction.
    pub fn matches(&self) -> Option<bool> {
        let p = self.predicted.as_ref()?;
        Some(self.verdict.is_design && self.verdict.lambda == p.as_u64())
    }
}

pub fn support_design_report(code: &LinearCode, w: usize, t: usize) -> Result<SupportDesignReport> {
    let predicted = (lambda_hypotheses_hold(code)? && w < code.n())
        .then(|| predicted_lambda(code.n(), code.k(), w));
    let design = support_blocks(code, w)?;
    let verdict = verify_t_design(&design, t)?;
    Ok(SupportDesignReport {
        weight: w,
        design: design.with_verdict(t, &verdict),
        verdict,
        predicted,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Code,
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GateRole {
    /// The code itself plays the criterion's code role.
    Direct,
    /// The dual plays the criterion's code role.
    Dual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateVerdict {
    pub role: GateRole,
    pub t: usize,
    /// Minimum distance of the code in the criterion's code role.
    pub d: usize,
    /// Nonzero weights of the other side in `(0, n - t]`.
    pub s: usize,
    pub passed: bool,
    /// Weights certified to hold t-designs, named relative to the original
    /// code.
    pub certified: Vec<(Side, usize)>,
}

/// `s ≤ d - t` with `s` the number of nonzero weights of `other` in
/// `(0, n - t]`; on success the weights of `primary` at least `d` and those
/// of `other` in `[d_other, n - t]` hold t-designs.
fn gate(primary: &WeightDistribution, other: &WeightDistribution, t: usize, role: GateRole) -> Result<GateVerdict> {
    let n = primary.n();
    let d = primary
        .min_nonzero_weight()
        .ok_or_else(|| Error::Precondition("the code in the criterion's code role is zero".into()))?;
    if t >= d {
        return Err(Error::Precondition(format!("strength t = {t} must be below d = {d}")));
    }
    let other_weights = other.nonzero_weights();
    let s = other_weights.iter().filter(|&&i| i <= n - t).count();
    let passed = s <= d - t;
    let (own, theirs) = match role {
        GateRole::Direct => (Side::Code, Side::Dual),
        GateRole::Dual => (Side::Dual, Side::Code),
    };
    let certified = if passed {
        primary
            .nonzero_weights()
            .into_iter()
            .map(|w| (own, w))
            .chain(other_weights.into_iter().filter(|&i| i <= n - t).map(|w| (theirs, w)))
            .collect()
    } else {
        Vec::new()
    };
    Ok(GateVerdict {
        role,
        t,
        d,
        s,
        passed,
        certified,
    })
}

/// The criterion with the code in the criterion's code role.
pub fn assmus_mattson_gate(code: &LinearCode, t: usize) -> Result<GateVerdict> {
    let dist = code.weight_distribution()?;
    gate(dist, &dist.macwilliams_dual()?, t, GateRole::Direct)
}

/// The criterion with the dual in the criterion's code role, the arrangement
/// under which projective three-weight codes with the all-ones word
/// qualify at `t = 2`.
pub fn assmus_mattson_gate_dual(code: &LinearCode, t: usize) -> Result<GateVerdict> {
    let dist = code.weight_distribution()?;
    if code.k() == code.n() {
        return Err(Error::Precondition("the dual of the full space is zero".into()));
    }
    gate(&dist.macwilliams_dual()?, dist, t, GateRole::Dual)
}

#[derive(Clone, Debug)]
pub enum DualDesignOutcome {
    /// Dual codewords were enumerated and their supports checked.
    Verified { design: Design, verdict: DesignVerdict },
    /// No dual codeword has weight `2r`.
    Empty,
    /// The dual is too large to enumerate; only the closed form is available.
    PredictionOnly,
}

#[derive(Clone, Debug)]
pub struct DualDesignReport {
    pub r: usize,
    pub outcome: DualDesignOutcome,
    /// Present when the code meets the hypotheses and `r` is in range.
    pub predicted: Option<LambdaPrediction>,
}

impl DualDesignReport {
    pub fn matches(&self) -> Option<bool> {
        let p = self.predicted.as_ref()?;
        match &self.outcome {
            DualDesignOutcome::Verified { verdict, .. } => Some(verdict.is_design && verdict.lambda == p.as_u64()),
            DualDesignOutcome::Empty => Some(p.value.is_zero()),
            DualDesignOutcome::PredictionOnly => None,
        }
    }
}

/// Supports of the weight-`2r` dual codewords, tested at `t = 2`.
pub fn dual_design_verify(code: &LinearCode, r: usize) -> Result<DualDesignReport> {
    let (n, k) = (code.n(), code.k());
    let predicted = if lambda_hypotheses_hold(code)? && r >= 2 && r < n / 2 {
        let d = code.min_distance()?;
        Some(predicted_dual_lambda(n, k, d, r)?)
    } else {
        None
    };
    if n - k > DUAL_ENUMERATION_CAP {
        return Ok(DualDesignReport {
            r,
            outcome: DualDesignOutcome::PredictionOnly,
            predicted,
        });
    }
    if n == k {
        return Ok(DualDesignReport {
            r,
            outcome: DualDesignOutcome::Empty,
            predicted,
        });
    }
    let dual = code.dual()?;
    let outcome = match support_blocks(&dual, 2 * r) {
        Err(Error::EmptyDesign(_)) => DualDesignOutcome::Empty,
        Err(e) => return Err(e),
        Ok(design) => {
            let verdict = verify_t_design(&design, 2)?;
            DualDesignOutcome::Verified {
                design: design.with_verdict(2, &verdict),
                verdict,
            }
        }
    };
    Ok(DualDesignReport { r, outcome, predicted })
}

/// The dual weights `2r` covered by the λ⊥ formula: `2 ≤ r ≤ ⌊n/2⌋ - 1`.
pub fn dual_half_weights(n: usize) -> std::ops::RangeInclusive<usize> {
    2..=(n / 2).saturating_sub(1)
}
