//! Arithmetic in GF(2^m) in the polynomial basis, with absolute and relative
//! trace maps.
//!
//! Elements are `m`-bit coefficient vectors: bit `i` is the coefficient of
//! `α^i`, where `α` is a root of the context's modulus. A [`FieldContext`] is
//! immutable once built and can be shared freely between threads.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 24;

/// Largest degree for which log/antilog tables are built.
const TABLE_DEGREE: u32 = 16;

/// An element of GF(2^m), stored as its coefficient bits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub const fn from_bits(bits: u32) -> Self {
        FieldElement(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

#[derive(Clone, Debug)]
struct LogTables {
    log: Vec<u32>,
    /// `exp[i] = g^i` for `i` in `0..2(q-1)`, so sums of two logs index directly.
    exp: Vec<u32>,
}

/// A concrete model of GF(2^m).
#[derive(Clone, Debug)]
pub struct FieldContext {
    m: u32,
    modulus: u64,
    /// Bit `i` is `Tr(α^i)`; the absolute trace is the parity of `x & trace_mask`.
    trace_mask: u32,
    tables: Option<LogTables>,
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldContext {}

impl FieldContext {
    /// Builds GF(2^m). Without a modulus the numerically smallest irreducible
    /// polynomial of degree `m` is used, so outputs are reproducible.
    pub fn new(m: u32, modulus: Option<u64>) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        let modulus = match modulus {
            Some(p) => {
                if p == 0 || degree(p) != m {
                    return Err(Error::ModulusDegree { m, modulus: p });
                }
                if let Some(factor) = smallest_factor(p) {
                    return Err(Error::ReducibleModulus { modulus: p, factor });
                }
                p
            }
            None => default_modulus(m),
        };
        let mut ctx = FieldContext {
            m,
            modulus,
            trace_mask: 0,
            tables: None,
        };
        if m <= TABLE_DEGREE {
            ctx.tables = Some(ctx.build_tables());
        }
        ctx.trace_mask = (0..m)
            .filter(|&i| ctx.frobenius_sum(FieldElement(1 << i), m, 1) == FieldElement::ONE)
            .fold(0, |mask, i| mask | (1 << i));
        Ok(ctx)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements, `2^m`.
    pub fn order(&self) -> u64 {
        1u64 << self.m
    }

    /// The root `α` of the modulus.
    pub fn generator(&self) -> FieldElement {
        FieldElement(2)
    }

    pub fn element(&self, bits: u64) -> Result<FieldElement> {
        if bits >= self.order() {
            return Err(Error::InvalidElement { bits, m: self.m });
        }
        Ok(FieldElement(bits as u32))
    }

    /// All `2^m` elements in ascending order of their bit representation.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(|b| FieldElement(b as u32))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        debug_assert!(u64::from(x.0) < self.order() && u64::from(y.0) < self.order());
        match &self.tables {
            Some(t) => {
                if x.0 == 0 || y.0 == 0 {
                    FieldElement::ZERO
                } else {
                    FieldElement(t.exp[(t.log[x.0 as usize] + t.log[y.0 as usize]) as usize])
                }
            }
            None => self.mul_reduce(x, y),
        }
    }

    fn mul_reduce(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let mut a = u64::from(x.0);
        let mut b = u64::from(y.0);
        let mut acc = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.m & 1 == 1 {
                a ^= self.modulus;
            }
        }
        FieldElement(acc as u32)
    }

    pub fn square(&self, x: FieldElement) -> FieldElement {
        self.mul(x, x)
    }

    /// `x^e` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut base = x;
        let mut acc = FieldElement::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, x: FieldElement) -> Option<FieldElement> {
        if x.is_zero() {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let l = t.log[x.0 as usize];
                let q1 = (self.order() - 1) as u32;
                FieldElement(t.exp[((q1 - l) % q1) as usize])
            }
            None => self.pow(x, self.order() - 2),
        })
    }

    /// The Frobenius power `x^(2^s)`.
    pub fn frobenius(&self, x: FieldElement, s: u32) -> FieldElement {
        (0..s % self.m).fold(x, |y, _| self.square(y))
    }

    /// `Σ_{i<terms} x^(2^(step·i))`.
    fn frobenius_sum(&self, x: FieldElement, terms: u32, step: u32) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut y = x;
        for _ in 0..terms {
            acc += y;
            y = self.frobenius(y, step);
        }
        acc
    }

    /// Absolute trace `Tr(x) = Σ_{i<m} x^(2^i)`, as 0 or 1.
    pub fn trace(&self, x: FieldElement) -> u8 {
        ((x.0 & self.trace_mask).count_ones() & 1) as u8
    }

    /// Bit `i` of the result is `Tr(α^i)`.
    pub fn trace_mask(&self) -> u32 {
        self.trace_mask
    }

    /// Relative trace from GF(2^m) onto its subfield GF(2^e).
    pub fn relative_trace(&self, x: FieldElement, e: u32) -> Result<FieldElement> {
        if e == 0 || self.m % e != 0 {
            return Err(Error::NotADivisor { e, m: self.m });
        }
        let t = self.frobenius_sum(x, self.m / e, e);
        debug_assert_eq!(self.frobenius(t, e), t);
        Ok(t)
    }

    /// Whether `x` lies in the subfield GF(2^e).
    pub fn in_subfield(&self, x: FieldElement, e: u32) -> bool {
        self.m % e == 0 && self.frobenius(x, e) == x
    }

    /// Absolute trace of the subfield GF(2^e), applied to an element of that
    /// subfield: `Σ_{i<e} y^(2^i)`.
    pub fn subfield_trace(&self, y: FieldElement, e: u32) -> Result<u8> {
        if e == 0 || self.m % e != 0 {
            return Err(Error::NotADivisor { e, m: self.m });
        }
        if !self.in_subfield(y, e) {
            return Err(Error::Precondition(format!(
                "{y} does not lie in the subfield GF(2^{e})"
            )));
        }
        let t = self.frobenius_sum(y, e, 1);
        debug_assert!(t.0 <= 1);
        Ok(t.0 as u8)
    }

    fn build_tables(&self) -> LogTables {
        let q1 = (self.order() - 1) as usize;
        let g = self.primitive_element();
        let mut exp = vec![0u32; 2 * q1];
        let mut log = vec![0u32; q1 + 1];
        let mut x = FieldElement::ONE;
        for i in 0..q1 {
            exp[i] = x.0;
            exp[i + q1] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_reduce(x, g);
        }
        LogTables { log, exp }
    }

    fn primitive_element(&self) -> FieldElement {
        let q1 = self.order() - 1;
        let primes = prime_factors(q1);
        let slow_pow = |x: FieldElement, mut e: u64| {
            let (mut base, mut acc) = (x, FieldElement::ONE);
            while e != 0 {
                if e & 1 == 1 {
                    acc = self.mul_reduce(acc, base);
                }
                base = self.mul_reduce(base, base);
                e >>= 1;
            }
            acc
        };
        (2..self.order() as u32)
            .map(FieldElement)
            .find(|&g| primes.iter().all(|&p| slow_pow(g, q1 / p) != FieldElement::ONE))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            m: self.m,
            modulus: format!("{:#x}", self.modulus),
        }
    }
}

/// Serialized form of a field context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub m: u32,
    pub modulus: String,
}

impl FieldSpec {
    pub fn build(&self) -> Result<FieldContext> {
        let modulus = parse_hex(&self.modulus).map_err(|e| Error::parse("modulus", e))?;
        FieldContext::new(self.m, Some(modulus))
    }
}

/// Parses a hex string with or without a `0x` prefix.
pub fn parse_hex(s: &str) -> std::result::Result<u64, String> {
    let digits = s.trim().trim_start_matches("0x").trim_start_matches("0X");
    u64::from_str_radix(digits, 16).map_err(|e| format!("{s:?}: {e}"))
}

fn degree(p: u64) -> u32 {
    63 - p.leading_zeros()
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

/// Smallest nontrivial factor of `p` over GF(2), by trial division with every
/// polynomial of degree at most `deg(p)/2`.
pub fn smallest_factor(p: u64) -> Option<u64> {
    let half = degree(p) / 2;
    (2..1u64 << (half + 1)).find(|&c| poly_rem(p, c) == 0)
}

pub fn is_irreducible(p: u64) -> bool {
    p > 1 && smallest_factor(p).is_none()
}

/// The numerically smallest irreducible polynomial of degree `m`.
pub fn default_modulus(m: u32) -> u64 {
    (1u64 << m..1u64 << (m + 1))
        .find(|&p| is_irreducible(p))
        .expect("irreducible polynomials exist in every degree")
}

/// All irreducible polynomials of degree `m`, ascending.
pub fn irreducible_polynomials(m: u32) -> impl Iterator<Item = u64> {
    (1u64 << m..1u64 << (m + 1)).filter(|&p| is_irreducible(p))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
