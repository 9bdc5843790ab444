//! Binary linear codes: generator matrices, exact weight distributions,
//! duals and the MacWilliams transform.

mod analysis;
mod distribution;
mod enumerate;
mod vector;

use std::sync::OnceLock;

pub use analysis::{
    dual_summary, three_weight_profile, DualClosedForm, DualSummary, Hypothesis,
    ThreeWeightProfile, ThreeWeightReport,
};
pub use distribution::{pless_check, Moment, PlessVerdict, WeightDistribution};
pub use vector::BinaryVector;

use crate::error::{Error, Result};

/// Largest dimension whose codewords are enumerated exhaustively.
pub const ENUMERATION_CAP: usize = 24;

/// Largest dual dimension for which duals are enumerated explicitly as a
/// cross-check of the MacWilliams transform.
pub const DUAL_ENUMERATION_CAP: usize = 22;

/// A binary `[n, k]` code given by `k` independent generator rows.
#[derive(Clone, Debug)]
pub struct LinearCode {
    n: usize,
    rows: Vec<BinaryVector>,
    distribution: OnceLock<WeightDistribution>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

impl LinearCode {
    /// Rejects dependent rows.
    pub fn new(n: usize, rows: Vec<BinaryVector>) -> Result<Self> {
        check_lengths(n, &rows)?;
        let (basis, _) = echelon(&rows);
        if basis.len() != rows.len() {
            return Err(Error::DependentRows {
                rank: basis.len(),
                rows: rows.len(),
            });
        }
        if rows.is_empty() {
            return Err(Error::ZeroDimensional);
        }
        Ok(LinearCode {
            n,
            rows,
            distribution: OnceLock::new(),
        })
    }

    /// Keeps a maximal independent subset of `rows`, in their original order.
    pub fn from_spanning_rows(n: usize, rows: Vec<BinaryVector>) -> Result<Self> {
        check_lengths(n, &rows)?;
        let mut kept = Vec::new();
        let mut reduced: Vec<(usize, BinaryVector)> = Vec::new();
        for row in rows {
            let mut r = row.clone();
            for (pivot, b) in &reduced {
                if r.get(*pivot) {
                    r.xor_assign(b);
                }
            }
            if let Some(pivot) = r.first_one() {
                reduced.push((pivot, r));
                kept.push(row);
            }
        }
        LinearCode::new(n, kept)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BinaryVector] {
        &self.rows
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.k() > ENUMERATION_CAP {
            return Err(Error::EnumerationCap {
                k: self.k(),
                cap: ENUMERATION_CAP,
            });
        }
        Ok(())
    }

    /// Exact distribution by enumerating all `2^k` codewords; cached.
    pub fn weight_distribution(&self) -> Result<&WeightDistribution> {
        if let Some(d) = self.distribution.get() {
            return Ok(d);
        }
        self.check_enumerable()?;
        let counts = enumerate::weight_counts(&self.rows, self.n);
        let dist = WeightDistribution::from_u64(self.n, self.k(), &counts)?;
        Ok(self.distribution.get_or_init(|| dist))
    }

    /// All codewords of weight `w`, sorted.
    pub fn codewords_of_weight(&self, w: usize) -> Result<Vec<BinaryVector>> {
        self.check_enumerable()?;
        let mut words = enumerate::codewords_of_weight(&self.rows, self.n, w);
        words.sort();
        Ok(words)
    }

    /// Calls `f` on every codeword, in an unspecified order.
    pub fn for_each_codeword(&self, f: impl Fn(&BinaryVector) + Sync) -> Result<()> {
        self.check_enumerable()?;
        let n = self.n;
        enumerate::fold_codewords(&self.rows, n, || (), |_, w| {
            f(&BinaryVector::from_words(n, w.to_vec()))
        });
        Ok(())
    }

    pub fn min_distance(&self) -> Result<usize> {
        Ok(self
            .weight_distribution()?
            .min_nonzero_weight()
            .expect("a code of positive dimension has a nonzero codeword"))
    }

    /// Encodes a message given as the low `k` bits of `msg`.
    pub fn encode(&self, msg: u64) -> BinaryVector {
        let mut v = BinaryVector::zeros(self.n);
        for (j, r) in self.rows.iter().enumerate() {
            if msg >> j & 1 == 1 {
                v.xor_assign(r);
            }
        }
        v
    }

    pub fn contains(&self, v: &BinaryVector) -> bool {
        let (basis, pivots) = echelon(&self.rows);
        let mut r = v.clone();
        for (b, &p) in basis.iter().zip(&pivots) {
            if r.get(p) {
                r.xor_assign(b);
            }
        }
        r.is_zero()
    }

    /// The dual code, spanned by the kernel of the generator matrix.
    pub fn dual(&self) -> Result<LinearCode> {
        let (basis, pivots) = echelon(&self.rows);
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let rows: Vec<BinaryVector> = (0..self.n)
            .filter(|c| !pivot_set.contains(c))
            .map(|free| {
                let mut v = BinaryVector::zeros(self.n);
                v.set(free, true);
                for (b, &p) in basis.iter().zip(&pivots) {
                    if b.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        if rows.is_empty() {
            return Err(Error::ZeroDimensional);
        }
        LinearCode::new(self.n, rows)
    }

    /// Same code with coordinates reordered: new coordinate `i` is old
    /// coordinate `perm[i]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<LinearCode> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n || perm.iter().any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Precondition("not a permutation of the coordinates".into()));
        }
        LinearCode::new(self.n, self.rows.iter().map(|r| r.permuted(perm)).collect())
    }

    /// Column `j` of the generator as a bit mask over rows.
    pub fn column(&self, j: usize) -> u64 {
        debug_assert!(self.k() <= 64);
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.get(j))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }
}

fn check_lengths(n: usize, rows: &[BinaryVector]) -> Result<()> {
    for (index, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::RowLength {
                index,
                len: r.len(),
                n,
            });
        }
    }
    Ok(())
}

/// Reduced row echelon basis of the span with the pivot column of each row.
/// Every pivot column is zero outside its own row.
fn echelon(rows: &[BinaryVector]) -> (Vec<BinaryVector>, Vec<usize>) {
    let mut basis: Vec<BinaryVector> = Vec::new();
    let mut pivots = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for (b, &p) in basis.iter().zip(&pivots) {
            if r.get(p) {
                r.xor_assign(b);
            }
        }
        if let Some(p) = r.first_one() {
            for b in basis.iter_mut() {
                if b.get(p) {
                    b.xor_assign(&r);
                }
            }
            basis.push(r);
            pivots.push(p);
        }
    }
    (basis, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn code(n: usize, rows: &[&str]) -> LinearCode {
        let rows = rows
            .iter()
            .map(|s| BinaryVector::from_bits(s.chars().map(|c| c == '1')))
            .collect();
        LinearCode::new(n, rows).unwrap()
    }

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

    fn counts(c: &LinearCode) -> Vec<u64> {
        c.weight_distribution()
            .unwrap()
            .counts()
            .iter()
            .map(|x| u64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn repetition_code_distribution() {
        let c = code(6, &["111111"]);
        assert_eq!(counts(&c), vec![1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(c.min_distance().unwrap(), 6);
    }

    #[test]
    fn even_weight_code() {
        let c = even_weight(6);
        assert_eq!(counts(&c), vec![1, 0, 15, 0, 15, 0, 1]);
        assert_eq!(c.min_distance().unwrap(), 2);
        let d = c.dual().unwrap();
        assert_eq!(d.k(), 1);
        assert_eq!(d.rows()[0], BinaryVector::ones(6));
    }

    #[test]
    fn dependent_rows_are_rejected() {
        let rows = vec![
            BinaryVector::from_bits([true, true, false]),
            BinaryVector::from_bits([false, true, true]),
            BinaryVector::from_bits([true, false, true]),
        ];
        assert!(matches!(
            LinearCode::new(3, rows.clone()),
            Err(Error::DependentRows { rank: 2, rows: 3 })
        ));
        let c = LinearCode::from_spanning_rows(3, rows).unwrap();
        assert_eq!(c.k(), 2);
        assert!(matches!(
            LinearCode::from_spanning_rows(3, vec![BinaryVector::zeros(3)]),
            Err(Error::ZeroDimensional)
        ));
    }

    #[test]
    fn row_length_is_checked() {
        let r = vec![BinaryVector::ones(4)];
        assert!(matches!(LinearCode::new(5, r), Err(Error::RowLength { .. })));
    }

    #[test]
    fn dual_rows_are_orthogonal_and_double_dual_is_original() {
        let c = code(7, &["1101000", "0110100", "0011010", "0001101"]);
        let d = c.dual().unwrap();
        assert_eq!(d.k(), 3);
        for a in c.rows() {
            for b in d.rows() {
                assert!(!a.dot(b));
            }
        }
        let dd = d.dual().unwrap();
        assert_eq!(dd.k(), c.k());
        assert!(dd.rows().iter().all(|r| c.contains(r)));
        assert!(c.rows().iter().all(|r| dd.contains(r)));
    }

    #[test]
    fn full_space_has_no_dual() {
        let c = code(3, &["100", "010", "001"]);
        assert!(matches!(c.dual(), Err(Error::ZeroDimensional)));
    }

    #[test]
    fn enumeration_cap() {
        let rows = (0..25)
            .map(|i| {
                let mut v = BinaryVector::zeros(30);
                v.set(i, true);
                v
            })
            .collect();
        let c = LinearCode::new(30, rows).unwrap();
        assert!(matches!(c.weight_distribution(), Err(Error::EnumerationCap { k: 25, .. })));
    }

    #[test]
    fn hamming_distribution_and_codewords() {
        let c = code(7, &["1101000", "0110100", "0011010", "0001101"]);
        assert_eq!(counts(&c), vec![1, 0, 0, 7, 7, 0, 0, 1]);
        let w3 = c.codewords_of_weight(3).unwrap();
        assert_eq!(w3.len(), 7);
        assert!(w3.windows(2).all(|p| p[0] < p[1]));
        assert!(w3.iter().all(|w| c.contains(w) && w.weight() == 3));
    }

    #[test]
    fn column_permutation_preserves_distribution() {
        let c = code(7, &["1101000", "0110100", "0011010", "0001101"]);
        let p = c.permute_columns(&[6, 2, 4, 0, 1, 5, 3]).unwrap();
        assert_eq!(c.weight_distribution().unwrap(), p.weight_distribution().unwrap());
        assert!(c.permute_columns(&[0, 0, 1, 2, 3, 4, 5]).is_err());
    }

    #[test]
    fn large_length_enumeration() {
        // two disjoint blocks of 100 ones each, spanning three codewords of
        // weight 100, 100, 200
        let mut a = BinaryVector::zeros(200);
        let mut b = BinaryVector::zeros(200);
        for i in 0..100 {
            a.set(i, true);
            b.set(100 + i, true);
        }
        let c = LinearCode::new(200, vec![a, b]).unwrap();
        let d = c.weight_distribution().unwrap();
        assert_eq!(d.count(100), &BigUint::from(2u32));
        assert_eq!(d.count(200), &BigUint::from(1u32));
    }
}
