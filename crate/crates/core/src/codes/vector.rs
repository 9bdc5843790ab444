use std::fmt;

use crate::error::{Error, Result};

/// A vector in GF(2)^n, packed 64 coordinates per word. Coordinate `i`
/// (0-based) lives in bit `i % 64` of word `i / 64`; unused high bits of the
/// last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryVector {
    len: usize,
    words: Vec<u64>,
}

pub(crate) fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BinaryVector {
    pub fn zeros(len: usize) -> Self {
        BinaryVector {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BinaryVector {
            len,
            words: vec![u64::MAX; word_count(len)],
        };
        v.clear_padding();
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        BinaryVector { len, words }
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(len));
        let mut v = BinaryVector { len, words };
        v.clear_padding();
        v
    }

    fn clear_padding(&mut self) {
        if self.len % 64 != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (self.len % 64)) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "coordinate {i} out of range for length {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "coordinate {i} out of range for length {}", self.len);
        if bit {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BinaryVector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Standard inner product over GF(2).
    pub fn dot(&self, other: &BinaryVector) -> bool {
        assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// The vector with one extra coordinate appended.
    pub fn appended(&self, bit: bool) -> BinaryVector {
        let mut out = BinaryVector::zeros(self.len + 1);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        out.set(self.len, bit);
        out
    }

    /// Coordinates are reordered so that output coordinate `i` is input
    /// coordinate `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> BinaryVector {
        BinaryVector::from_bits(perm.iter().map(|&p| self.get(p)))
    }

    /// Lowest set coordinate.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|wi| wi * 64 + self.words[wi].trailing_zeros() as usize)
    }

    pub fn ones_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Support as sorted 1-based coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.ones_positions().map(|i| i + 1).collect()
    }

    /// `⌈len/4⌉` hex digits, most significant first; bit 0 is coordinate 1.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4);
        (0..digits)
            .rev()
            .map(|d| {
                let bit = 4 * d;
                let nibble = (self.words[bit / 64] >> (bit % 64)) & 0xf;
                char::from_digit(nibble as u32, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(s: &str, len: usize) -> Result<Self> {
        let digits = len.div_ceil(4);
        if s.len() != digits {
            return Err(Error::parse(
                "row",
                format!("expected {digits} hex digits for length {len}, found {}", s.len()),
            ));
        }
        let mut v = BinaryVector::zeros(len);
        for (d, c) in s.chars().rev().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::parse("row", format!("invalid hex digit {c:?}")))?;
            let bit = 4 * d;
            if bit + 4 > len && nibble >> (len - bit) != 0 {
                return Err(Error::parse("row", "bits set beyond the code length"));
            }
            v.words[bit / 64] |= u64::from(nibble) << (bit % 64);
        }
        Ok(v)
    }
}

impl fmt::Debug for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "BinaryVector({s})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ones_has_full_weight() {
        for n in [1, 5, 63, 64, 65, 130] {
            let v = BinaryVector::ones(n);
            assert_eq!(v.weight(), n);
            assert_eq!(v.support(), (1..=n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn hex_layout() {
        let v = BinaryVector::from_bits([true, false, false, false, true, true]);
        // bits 0, 4, 5 set → 0x31
        assert_eq!(v.to_hex(), "31");
        assert!(BinaryVector::from_hex("71", 6).is_err());
        assert!(BinaryVector::from_hex("031", 6).is_err());
    }

    #[test]
    fn append_and_permute() {
        let v = BinaryVector::from_bits([true, false, true]);
        assert_eq!(v.appended(false).support(), vec![1, 3]);
        assert_eq!(v.appended(true).support(), vec![1, 3, 4]);
        assert_eq!(v.permuted(&[1, 2, 0]).support(), vec![2, 3]);
    }

    proptest! {
        #[test]
        fn hex_roundtrip(bits in proptest::collection::vec(any::<bool>(), 1..200)) {
            let v = BinaryVector::from_bits(bits.clone());
            let back = BinaryVector::from_hex(&v.to_hex(), bits.len()).unwrap();
            prop_assert_eq!(&back, &v);
            prop_assert_eq!(v.weight(), bits.iter().filter(|&&b| b).count());
        }

        #[test]
        fn xor_weight_parity(a in proptest::collection::vec(any::<bool>(), 70), b in proptest::collection::vec(any::<bool>(), 70)) {
            let x = BinaryVector::from_bits(a);
            let y = BinaryVector::from_bits(b);
            let mut s = x.clone();
            s.xor_assign(&y);
            // wt(x + y) = wt(x) + wt(y) - 2|x ∧ y|
            prop_assert_eq!((s.weight() + x.weight() + y.weight()) % 2, 0);
            prop_assert_eq!(x.dot(&y), (x.weight() + y.weight() - s.weight()) / 2 % 2 == 1);
        }
    }
}
