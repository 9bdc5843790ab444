use num_traits::One;
use serde::Serialize;

use crate::codes::{dual_summary, BinaryVector, LinearCode};
use crate::error::Result;

/// Appends a zero coordinate to every generator row and adds the all-ones
/// row of length `n + 1`. The result has dimension `k + 1` and exactly one
/// word of full weight.
pub fn extend_code(code: &LinearCode) -> Result<LinearCode> {
    let n = code.n();
    let mut rows: Vec<BinaryVector> = code.rows().iter().map(|r| r.appended(false)).collect();
    rows.push(BinaryVector::ones(n + 1));
    LinearCode::new(n + 1, rows)
}

/// A named pass/fail item with the values that decided it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub(crate) fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionVerdict {
    /// Conditions on the input code.
    pub input_checks: Vec<Check>,
    /// The extension, built only when every input check passed.
    pub extended: Option<LinearCode>,
    pub output_checks: Vec<Check>,
}

impl ExtensionVerdict {
    pub fn passed(&self) -> bool {
        self.extended.is_some()
            && self.input_checks.iter().all(|c| c.passed)
            && self.output_checks.iter().all(|c| c.passed)
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.input_checks.iter().chain(&self.output_checks)
    }
}

/// Requires a projective two-weight input whose weights sum to its length
/// plus one; then extends it and confirms a projective three-weight code with
/// weights `{d, n-d, n}` and a single full-weight word.
pub fn extension_gate(code: &LinearCode) -> Result<ExtensionVerdict> {
    let dist = code.weight_distribution()?;
    let weights = dist.nonzero_weights();
    let projective = dual_summary(code)?.projective;
    let two = weights.len() == 2;
    let complementary = two && weights[0] + weights[1] == code.n() + 1;
    let input_checks = vec![
        Check::new("input projective", projective, format!("[{}, {}]", code.n(), code.k())),
        Check::new("input has two nonzero weights", two, format!("{weights:?}")),
        Check::new(
            "input weights sum to length + 1",
            complementary,
            format!("{weights:?}, length {}", code.n()),
        ),
    ];
    if !(projective && two && complementary) {
        return Ok(ExtensionVerdict {
            input_checks,
            extended: None,
            output_checks: Vec::new(),
        });
    }

    let ext = extend_code(code)?;
    let n = ext.n();
    let d = weights[0];
    let ext_dist = ext.weight_distribution()?;
    let ext_weights = ext_dist.nonzero_weights();
    let output_checks = vec![
        Check::new("extension projective", dual_summary(&ext)?.projective, format!("[{n}, {}]", ext.k())),
        Check::new(
            "extension weights are {d, n-d, n}",
            ext_weights == [d, n - d, n],
            format!("{ext_weights:?}"),
        ),
        Check::new(
            "extension has A_n = 1",
            ext_dist.count(n).is_one(),
            format!("A_{n} = {}", ext_dist.count(n)),
        ),
    ];
    Ok(ExtensionVerdict {
        input_checks,
        extended: Some(ext),
        output_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn code(n: usize, rows: &[&str]) -> LinearCode {
        let rows = rows
            .iter()
            .map(|r| BinaryVector::from_bits(r.chars().map(|c| c == '1')))
            .collect();
        LinearCode::new(n, rows).unwrap()
    }

    #[test]
    fn repetition_extends_to_full_weight_pair() {
        let c = code(3, &["111"]);
        let e = extend_code(&c).unwrap();
        assert_eq!((e.n(), e.k()), (4, 2));
        let d = e.weight_distribution().unwrap();
        assert_eq!(d.count(4), &BigUint::one());
        assert_eq!(d.count(3), &BigUint::one());
        assert_eq!(d.count(1), &BigUint::one());
    }

    #[test]
    fn extension_doubles_codewords() {
        let c = code(5, &["11000", "01100", "00111"]);
        let e = extend_code(&c).unwrap();
        assert_eq!(e.k(), c.k() + 1);
        for w in c.codewords_of_weight(2).unwrap() {
            assert!(e.contains(&w.appended(false)));
            let mut comp = w.appended(false);
            comp.xor_assign(&BinaryVector::ones(6));
            assert!(e.contains(&comp));
        }
    }

    #[test]
    fn one_weight_simplex_fails_gate() {
        let c = code(7, &["1010101", "0110011", "0001111"]);
        let v = extension_gate(&c).unwrap();
        assert!(!v.passed());
        assert!(v.extended.is_none());
        assert!(v.input_checks[0].passed);
        assert!(!v.input_checks[1].passed);
    }
}
