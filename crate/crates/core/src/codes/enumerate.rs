//! Exhaustive codeword enumeration.
//!
//! The message space is split on its high-order bits into independent chunks
//! that run in parallel; inside a chunk a Gray-code walk reaches each
//! codeword from the previous one with a single row XOR.

use rayon::prelude::*;

use super::vector::BinaryVector;

/// High-order message bits used to split work between threads.
const SPLIT_BITS: usize = 6;

fn xor_into(acc: &mut [u64], row: &[u64]) {
    for (a, r) in acc.iter_mut().zip(row) {
        *a ^= r;
    }
}

/// Visits the `2^low` codewords whose high message bits equal `prefix`.
fn walk_chunk(rows: &[&[u64]], words: usize, low: usize, prefix: u64, mut visit: impl FnMut(&[u64])) {
    let mut current = vec![0u64; words];
    for (j, row) in rows[low..].iter().enumerate() {
        if prefix >> j & 1 == 1 {
            xor_into(&mut current, row);
        }
    }
    visit(&current);
    for step in 1u64..1u64 << low {
        xor_into(&mut current, rows[step.trailing_zeros() as usize]);
        visit(&current);
    }
}

/// Folds every codeword spanned by `rows` into per-chunk accumulators.
/// Chunks are returned in prefix order, so merged results do not depend on
/// scheduling.
pub(crate) fn fold_codewords<T, I, F>(rows: &[BinaryVector], n: usize, init: I, step: F) -> Vec<T>
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, &[u64]) + Sync,
{
    let words = super::vector::word_count(n);
    let row_words: Vec<&[u64]> = rows.iter().map(BinaryVector::words).collect();
    let k = rows.len();
    let high = k.min(SPLIT_BITS);
    let low = k - high;
    (0..1u64 << high)
        .into_par_iter()
        .map(|prefix| {
            let mut acc = init();
            walk_chunk(&row_words, words, low, prefix, |w| step(&mut acc, w));
            acc
        })
        .collect()
}

pub(crate) fn word_weight(w: &[u64]) -> usize {
    w.iter().map(|x| x.count_ones() as usize).sum()
}

/// Exact weight counts `A_0..A_n`.
pub(crate) fn weight_counts(rows: &[BinaryVector], n: usize) -> Vec<u64> {
    fold_codewords(rows, n, || vec![0u64; n + 1], |acc, w| acc[word_weight(w)] += 1)
        .into_iter()
        .fold(vec![0u64; n + 1], |mut total, part| {
            for (t, p) in total.iter_mut().zip(part) {
                *t += p;
            }
            total
        })
}

/// Every codeword of weight `w`.
pub(crate) fn codewords_of_weight(rows: &[BinaryVector], n: usize, w: usize) -> Vec<BinaryVector> {
    fold_codewords(rows, n, Vec::new, |acc, word| {
        if word_weight(word) == w {
            acc.push(BinaryVector::from_words(n, word.to_vec()));
        }
    })
    .into_iter()
    .flatten()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn random_rows(k: usize, n: usize, seed: u64) -> Vec<BinaryVector> {
        let mut state = seed;
        (0..k)
            .map(|_| {
                BinaryVector::from_bits((0..n).map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    state >> 63 == 1
                }))
            })
            .collect()
    }

    #[test]
    fn walk_visits_every_combination_once() {
        for k in [1, 3, 7, 9] {
            let rows = random_rows(k, 70, k as u64);
            let seen: Vec<Vec<BinaryVector>> = fold_codewords(&rows, 70, Vec::new, |acc, w| {
                acc.push(BinaryVector::from_words(70, w.to_vec()))
            });
            let all: Vec<BinaryVector> = seen.into_iter().flatten().collect();
            assert_eq!(all.len(), 1 << k);
            // compare with the naive span
            let mut naive = HashSet::new();
            for msg in 0u32..1 << k {
                let mut v = BinaryVector::zeros(70);
                for (j, r) in rows.iter().enumerate() {
                    if msg >> j & 1 == 1 {
                        v.xor_assign(r);
                    }
                }
                naive.insert(v);
            }
            let walked: HashSet<BinaryVector> = all.into_iter().collect();
            assert_eq!(walked, naive);
        }
    }
}
