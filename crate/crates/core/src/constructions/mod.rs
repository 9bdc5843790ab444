//! Code constructions: defining-set codes `C_D`, the trace-condition sets
//! `D_ρ`, extension of two-weight codes by the all-ones word, and two-weight
//! input codes from quadratic forms.

mod extension;
mod quadric;

pub use extension::{extend_code, extension_gate, Check, ExtensionVerdict};
pub use quadric::{quadric_two_weight, QuadricReport, QuadricVariant};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::codes::{dual_summary, BinaryVector, LinearCode};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

/// Where a defining set came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SetProvenance {
    /// `{x : Tr(x) = 1, Tr(x^(2^u+1)) = ρ}`.
    TraceConditions { m: u32, u: u32, rho: u8 },
    Custom,
}

/// An ordered set of distinct nonzero field elements.
#[derive(Clone, Debug)]
pub struct DefiningSet<'a> {
    ctx: &'a FieldContext,
    elements: Vec<FieldElement>,
    provenance: SetProvenance,
}

impl<'a> DefiningSet<'a> {
    /// Sorts and validates a custom set: no zero, no duplicates.
    pub fn custom(ctx: &'a FieldContext, mut elements: Vec<FieldElement>) -> Result<Self> {
        elements.sort();
        if elements.first() == Some(&FieldElement::ZERO) {
            return Err(Error::Precondition("a defining set may not contain 0".into()));
        }
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("a defining set may not repeat elements".into()));
        }
        for x in &elements {
            ctx.element(u64::from(x.bits()))?;
        }
        Ok(DefiningSet {
            ctx,
            elements,
            provenance: SetProvenance::Custom,
        })
    }

    pub fn ctx(&self) -> &'a FieldContext {
        self.ctx
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn provenance(&self) -> SetProvenance {
        self.provenance
    }

    /// `(m, u, ρ)` when the set is a `D_ρ` with `m ≥ 5` odd and
    /// `gcd(u, m) = 1`, where all closed forms apply.
    pub fn closed_form_regime(&self) -> Option<(u32, u32, u8)> {
        match self.provenance {
            SetProvenance::TraceConditions { m, u, rho } if in_regime(m, u) => Some((m, u, rho)),
            _ => None,
        }
    }
}

pub fn in_regime(m: u32, u: u32) -> bool {
    m >= 5 && m % 2 == 1 && u.gcd(&m) == 1
}

/// `(-1)^((m²-1)/8)`.
pub fn jacobi_two(m: u32) -> i64 {
    let m = i64::from(m);
    if ((m * m - 1) / 8) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The two families of three-weight codes built from `D_ρ` when `m ≥ 5` is
/// odd and `gcd(u, m) = 1`. Which `ρ` gives which family depends on the sign
/// `(-1)^((m²-1)/8)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `[2^(m-2) - 2^((m-3)/2), m, 2^(m-3) - 2^((m-3)/2)]`.
    Short,
    /// `[2^(m-2) + 2^((m-3)/2), m, 2^(m-3)]`.
    Long,
}

impl Family {
    pub fn of(m: u32, rho: u8) -> Family {
        match (jacobi_two(m) == 1, rho) {
            (true, 0) | (false, 1) => Family::Short,
            _ => Family::Long,
        }
    }

    /// The `ρ` that yields this family at `m`.
    pub fn rho(self, m: u32) -> u8 {
        if Family::of(m, 0) == self {
            0
        } else {
            1
        }
    }

    /// Predicted `[n, k, d]` and the three nonzero weights.
    pub fn parameters(self, m: u32) -> FamilyParameters {
        let big = 1usize << (m - 2);
        let mid = 1usize << (m - 3);
        let gap = 1usize << ((m - 3) / 2);
        let (n, w1, w2) = match self {
            Family::Short => (big - gap, mid - gap, mid),
            Family::Long => (big + gap, mid, mid + gap),
        };
        FamilyParameters {
            n,
            k: m as usize,
            d: w1,
            weights: [w1, w2, n],
            light_count: (1u64 << (m - 1)) - 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParameters {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub weights: [usize; 3],
    /// `A_{w1} = A_{w2} = 2^(m-1) - 1`.
    pub light_count: u64,
}

/// `D_ρ = {x : Tr(x) = 1, Tr(x^(2^u+1)) = ρ}` in ascending order.
///
/// In the closed-form regime the size must be
/// `2^(m-2) ∓ (-1)^((m²-1)/8) 2^((m-3)/2)` (minus for `ρ = 0`); a mismatch
/// is reported as a construction error.
pub fn d_rho_set(ctx: &FieldContext, u: u32, rho: u8) -> Result<DefiningSet<'_>> {
    if rho > 1 {
        return Err(Error::Precondition(format!("rho must be 0 or 1, got {rho}")));
    }
    if u == 0 {
        return Err(Error::Precondition("u must be a positive integer".into()));
    }
    let elements: Vec<FieldElement> = ctx
        .elements()
        .filter(|&x| {
            ctx.trace(x) == 1 && ctx.trace(ctx.mul(ctx.frobenius(x, u), x)) == rho
        })
        .collect();
    let m = ctx.m();
    if in_regime(m, u) {
        let expected = d_rho_size(m, rho);
        if elements.len() != expected {
            return Err(Error::Construction(format!(
                "|D_{rho}| = {} at m = {m}, u = {u}; expected {expected}",
                elements.len()
            )));
        }
    }
    Ok(DefiningSet {
        ctx,
        elements,
        provenance: SetProvenance::TraceConditions { m, u, rho },
    })
}

/// Closed-form `|D_ρ|` for odd `m ≥ 5`, `gcd(u, m) = 1`.
pub fn d_rho_size(m: u32, rho: u8) -> usize {
    let base = 1i64 << (m - 2);
    let offset = jacobi_two(m) * (1i64 << ((m - 3) / 2));
    (if rho == 0 { base - offset } else { base + offset }) as usize
}

/// The code `{(Tr(b·d_1), ..., Tr(b·d_n)) : b ∈ GF(2^m)}`.
///
/// Generator rows come from the polynomial basis `1, α, ..., α^(m-1)`;
/// dependent rows are dropped when `b ↦ c(b)` is not injective.
pub fn defining_set_code(set: &DefiningSet<'_>) -> Result<LinearCode> {
    if set.is_empty() {
        return Err(Error::EmptyDefiningSet);
    }
    let ctx = set.ctx;
    let rows = (0..ctx.m())
        .map(|i| {
            let beta = FieldElement::from_bits(1 << i);
            BinaryVector::from_bits(set.elements.iter().map(|&d| ctx.trace(ctx.mul(beta, d)) == 1))
        })
        .collect();
    let code = LinearCode::from_spanning_rows(set.len(), rows)?;
    if set.closed_form_regime().is_some() && code.k() != ctx.m() as usize {
        return Err(Error::Construction(format!(
            "defining-set code has dimension {}, expected {}",
            code.k(),
            ctx.m()
        )));
    }
    Ok(code)
}

/// The codeword indexed by the field element `b`.
pub fn defining_set_codeword(set: &DefiningSet<'_>, b: FieldElement) -> BinaryVector {
    let ctx = set.ctx;
    BinaryVector::from_bits(set.elements.iter().map(|&d| ctx.trace(ctx.mul(b, d)) == 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightPrediction {
    /// `{|D|/2 - 2^((m-5)/2), |D|/2 + 2^((m-5)/2), |D|}`.
    pub predicted: BTreeSet<usize>,
    pub observed: BTreeSet<usize>,
    /// Weight of the codeword indexed by `b = 1`.
    pub unit_weight: usize,
}

impl WeightPrediction {
    pub fn matches(&self, set_len: usize) -> bool {
        self.predicted == self.observed && self.unit_weight == set_len
    }
}

/// Predicted and observed nonzero weights of `C_{D_ρ}`; `None` outside the
/// closed-form regime.
pub fn codeword_weight_predictions(set: &DefiningSet<'_>) -> Result<Option<WeightPrediction>> {
    let Some((m, _, _)) = set.closed_form_regime() else {
        return Ok(None);
    };
    let half = set.len() / 2;
    let offset = 1usize << ((m - 5) / 2);
    let predicted: BTreeSet<usize> = [half - offset, half + offset, set.len()].into();
    let code = defining_set_code(set)?;
    let observed = code.weight_distribution()?.nonzero_weights().into_iter().collect();
    let unit_weight = defining_set_codeword(set, FieldElement::ONE).weight();
    Ok(Some(WeightPrediction {
        predicted,
        observed,
        unit_weight,
    }))
}

/// One predicted quantity compared with its observed value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionCheck {
    pub item: String,
    /// Which closed form predicted the value.
    pub source: String,
    pub predicted: String,
    pub observed: String,
    pub matches: bool,
}

impl PredictionCheck {
    fn new(item: &str, source: &str, predicted: impl ToString, observed: impl ToString) -> Self {
        let predicted = predicted.to_string();
        let observed = observed.to_string();
        PredictionCheck {
            item: item.into(),
            source: source.into(),
            matches: predicted == observed,
            predicted,
            observed,
        }
    }
}

/// A built `C_{D_ρ}` with every closed-form prediction checked.
#[derive(Clone, Debug)]
pub struct ConstructionReport {
    pub code: LinearCode,
    pub m: u32,
    pub u: u32,
    pub rho: u8,
    /// `None` outside the closed-form regime.
    pub family: Option<Family>,
    pub checks: Vec<PredictionCheck>,
    pub observed_weights: Vec<usize>,
}

impl ConstructionReport {
    pub fn in_regime(&self) -> bool {
        self.family.is_some()
    }

    pub fn all_match(&self) -> bool {
        self.checks.iter().all(|c| c.matches)
    }
}

/// Builds `C_{D_ρ}` and checks length, dimension, minimum distance, weights,
/// enumerator, projectivity and the unit codeword against the closed forms.
/// Outside the regime only observed values are reported.
pub fn construct_d_rho(ctx: &FieldContext, u: u32, rho: u8) -> Result<ConstructionReport> {
    let set = d_rho_set(ctx, u, rho)?;
    let code = defining_set_code(&set)?;
    let m = ctx.m();
    let dist = code.weight_distribution()?;
    let observed_weights = dist.nonzero_weights();
    let family = in_regime(m, u).then(|| Family::of(m, rho));
    let mut checks = Vec::new();
    if let Some(family) = family {
        let p = family.parameters(m);
        let src = match family {
            Family::Short => "short-family parameters",
            Family::Long => "long-family parameters",
        };
        checks.push(PredictionCheck::new("defining-set size", "set cardinality", d_rho_size(m, rho), set.len()));
        checks.push(PredictionCheck::new("length", src, p.n, code.n()));
        checks.push(PredictionCheck::new("dimension", src, p.k, code.k()));
        checks.push(PredictionCheck::new("minimum distance", src, p.d, code.min_distance()?));
        checks.push(PredictionCheck::new(
            "weights",
            src,
            format!("{:?}", p.weights),
            format!("{observed_weights:?}"),
        ));
        let light = p.light_count.to_string();
        let expected_enum = format!("1 + {light}z^{} + {light}z^{} + z^{}", p.weights[0], p.weights[1], p.n);
        checks.push(PredictionCheck::new("enumerator", src, expected_enum, dist.enumerator()));
        checks.push(PredictionCheck::new(
            "projective",
            "zero-free, repetition-free defining set",
            true,
            dual_summary(&code)?.projective,
        ));
        if let Some(wp) = codeword_weight_predictions(&set)? {
            checks.push(PredictionCheck::new(
                "codeword weights",
                "character-sum weight bound",
                format!("{:?}", wp.predicted),
                format!("{:?}", wp.observed),
            ));
            checks.push(PredictionCheck::new("unit codeword weight", "trace condition Tr(x) = 1", set.len(), wp.unit_weight));
        }
    }
    Ok(ConstructionReport {
        code,
        m,
        u,
        rho,
        family,
        checks,
        observed_weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn gf(m: u32) -> FieldContext {
        FieldContext::new(m, None).unwrap()
    }

    #[test]
    fn d_rho_sizes() {
        assert_eq!(d_rho_set(&gf(5), 1, 1).unwrap().len(), 6);
        assert_eq!(d_rho_set(&gf(7), 1, 0).unwrap().len(), 28);
        assert_eq!(d_rho_set(&gf(7), 1, 1).unwrap().len(), 36);
        assert_eq!(d_rho_size(5, 0), 10);
    }

    #[test]
    fn d_rho_halves_partition_trace_one() {
        for (m, u) in [(5, 1), (5, 3), (7, 2), (9, 4)] {
            let ctx = gf(m);
            let d0 = d_rho_set(&ctx, u, 0).unwrap();
            let d1 = d_rho_set(&ctx, u, 1).unwrap();
            assert_eq!(d0.len() + d1.len(), 1 << (m - 1));
            assert!(d0.elements().iter().all(|x| !d1.elements().contains(x)));
        }
    }

    #[test]
    fn family_parity_rule() {
        // (m²-1)/8: m=5 → 3, m=7 → 6, m=9 → 10
        assert_eq!(Family::of(5, 1), Family::Short);
        assert_eq!(Family::of(7, 0), Family::Short);
        assert_eq!(Family::of(9, 0), Family::Short);
        assert_eq!(Family::of(5, 0), Family::Long);
        assert_eq!(Family::Long.rho(7), 1);
        let p = Family::Short.parameters(7);
        assert_eq!((p.n, p.k, p.d), (28, 7, 12));
        assert_eq!(p.weights, [12, 16, 28]);
        let p = Family::Long.parameters(7);
        assert_eq!((p.n, p.k, p.d), (36, 7, 16));
    }

    #[test]
    fn full_multiplicative_group_gives_simplex_code() {
        let ctx = gf(5);
        let all: Vec<FieldElement> = ctx.elements().skip(1).collect();
        let set = DefiningSet::custom(&ctx, all).unwrap();
        let code = defining_set_code(&set).unwrap();
        assert_eq!((code.n(), code.k()), (31, 5));
        let d = code.weight_distribution().unwrap();
        assert_eq!(d.nonzero_weights(), vec![16]);
        assert_eq!(d.count(16), &BigUint::from(31u32));
    }

    #[test]
    fn custom_sets_are_validated() {
        let ctx = gf(4);
        let e = |b| FieldElement::from_bits(b);
        assert!(DefiningSet::custom(&ctx, vec![e(0), e(1)]).is_err());
        assert!(DefiningSet::custom(&ctx, vec![e(3), e(3)]).is_err());
        assert!(DefiningSet::custom(&ctx, vec![e(16)]).is_err());
        let empty = DefiningSet::custom(&ctx, vec![]).unwrap();
        assert!(matches!(defining_set_code(&empty), Err(Error::EmptyDefiningSet)));
    }

    #[test]
    fn small_cases_match_closed_forms() {
        let r = construct_d_rho(&gf(5), 1, 1).unwrap();
        assert!(r.all_match(), "{:#?}", r.checks);
        assert_eq!(r.code.weight_distribution().unwrap().enumerator(), "1 + 15z^2 + 15z^4 + z^6");
        let r = construct_d_rho(&gf(7), 1, 1).unwrap();
        assert!(r.all_match(), "{:#?}", r.checks);
        assert_eq!(r.code.weight_distribution().unwrap().enumerator(), "1 + 63z^16 + 63z^20 + z^36");
    }

    #[test]
    fn weight_predictions() {
        let ctx = gf(7);
        let set = d_rho_set(&ctx, 1, 0).unwrap();
        let wp = codeword_weight_predictions(&set).unwrap().unwrap();
        assert_eq!(wp.predicted, [12, 16, 28].into());
        assert!(wp.matches(set.len()));
        let ctx5 = gf(5);
        let set = d_rho_set(&ctx5, 1, 1).unwrap();
        let wp = codeword_weight_predictions(&set).unwrap().unwrap();
        assert_eq!(wp.observed, [2, 4, 6].into());
        assert!(wp.matches(6));
    }

    #[test]
    fn out_of_regime_parameters_are_reported_without_claims() {
        let r = construct_d_rho(&gf(6), 1, 0).unwrap();
        assert!(!r.in_regime());
        assert!(r.checks.is_empty());
        assert!(!r.observed_weights.is_empty());
        let ctx = gf(6);
        let set = d_rho_set(&ctx, 1, 0).unwrap();
        assert_eq!(codeword_weight_predictions(&set).unwrap(), None);
    }

    #[test]
    fn unit_codeword_is_all_ones() {
        for (m, u, rho) in [(5, 2, 0), (7, 3, 1), (9, 2, 0)] {
            let ctx = gf(m);
            let set = d_rho_set(&ctx, u, rho).unwrap();
            let c = defining_set_codeword(&set, FieldElement::ONE);
            assert_eq!(c, BinaryVector::ones(set.len()));
        }
    }
}
