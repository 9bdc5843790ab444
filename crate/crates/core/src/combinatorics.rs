//! Exact binomial coefficients.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

/// `[C(n, 0), C(n, 1), ..., C(n, n)]`.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for j in 0..n {
        c = c * (n - j) / (j + 1);
        row.push(c.clone());
    }
    row
}

/// `C(n, r)`, zero when `r > n`.
pub fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::default();
    }
    let r = r.min(n - r);
    (0..r).fold(BigUint::one(), |c, j| c * (n - j) / (j + 1))
}

/// Position of a sorted subset of `0..v` among all subsets of the same size in
/// lexicographic order, matching the order of [`next_subset`].
pub fn rank_subset(subset: &[usize], v: usize) -> usize {
    let t = subset.len();
    let mut rank = 0usize;
    let mut prev = 0usize;
    for (i, &s) in subset.iter().enumerate() {
        for skipped in prev..s {
            rank += small_binomial(v - skipped - 1, t - i - 1);
        }
        prev = s + 1;
    }
    rank
}

/// `C(n, r)` in machine arithmetic; callers keep it small.
pub fn small_binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1usize, |c, j| c * (n - j) / (j + 1))
}

/// Advances `subset` (sorted, values in `0..v`) to the next subset in
/// lexicographic order. Returns false after the last one.
pub fn next_subset(subset: &mut [usize], v: usize) -> bool {
    let t = subset.len();
    let mut i = t;
    while i > 0 {
        i -= 1;
        if subset[i] < v - (t - i) {
            subset[i] += 1;
            for j in i + 1..t {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
