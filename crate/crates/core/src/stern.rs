//! Stern numbers and Stern polynomials.
//!
//! `B_0 = 0`, `B_1 = 1`, `B_{2n} = t B_n`, `B_{2n+1} = B_n + B_{n+1}`.
//! Three independent routes compute `B_n`: a most-significant-bit-first scan
//! that carries the pair `(B_k, B_{k+1})`, a digit recursion counting
//! hyperbinary representations of `n - 1` by their number of ones, and the
//! product form of the generating function.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SternError {
    #[error("the degree of B_0 = 0 is undefined")]
    UndefinedDegree,
    #[error("invalid index literal {0:?}")]
    BadIndex(String),
}

/// Index `n` of a Stern polynomial. Arbitrary precision.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct SternIndex(BigUint);

impl SternIndex {
    pub fn new(n: u64) -> Self {
        Self(BigUint::from(n))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_odd(&self) -> bool {
        self.0.is_odd()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn bit_length(&self) -> u64 {
        self.0.bits()
    }

    /// Bits from the most significant one down to bit 0.
    pub fn bits_msb_first(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.0.bits()).rev().map(move |i| self.0.bit(i))
    }

    /// Binary expansion, most significant digit first (`"0"` for zero).
    pub fn binary(&self) -> String {
        format!("{:b}", self.0)
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0.clone())
    }
}

impl From<u64> for SternIndex {
    fn from(n: u64) -> Self {
        Self::new(n)
    }
}

impl From<BigUint> for SternIndex {
    fn from(n: BigUint) -> Self {
        Self(n)
    }
}

impl fmt::Display for SternIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for SternIndex {
    type Err = SternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .parse::<BigUint>()
            .map(Self)
            .map_err(|_| SternError::BadIndex(s.to_string()))
    }
}

/// The consecutive pair `(B_k, B_{k+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SternPair {
    pub lo: IntPolynomial,
    pub hi: IntPolynomial,
    pub index: SternIndex,
}

pub fn stern_pair(n: &SternIndex) -> SternPair {
    let mut lo = IntPolynomial::zero();
    let mut hi = IntPolynomial::one();
    for bit in n.bits_msb_first() {
        let sum = &lo + &hi;
        if bit {
            lo = sum;
            hi = hi.shift(1);
        } else {
            hi = sum;
            lo = lo.shift(1);
        }
    }
    SternPair {
        lo,
        hi,
        index: n.clone(),
    }
}

pub fn stern_poly(n: &SternIndex) -> IntPolynomial {
    stern_pair(n).lo
}

/// Convenience wrapper for machine-size indices.
pub fn stern_poly_u64(n: u64) -> IntPolynomial {
    stern_poly(&SternIndex::new(n))
}

/// Stern's diatomic number `s_n = B_n(1)`.
pub fn stern_number(n: &SternIndex) -> BigUint {
    let mut lo = BigUint::zero();
    let mut hi = BigUint::one();
    for bit in n.bits_msb_first() {
        let sum = &lo + &hi;
        if bit {
            lo = sum;
        } else {
            hi = sum;
        }
    }
    lo
}

/// `e(n) = deg B_n`, from the degree recursion alone.
pub fn stern_degree(n: &SternIndex) -> Result<u64, SternError> {
    // None stands for deg 0 = -infinity; coefficients are nonnegative so a
    // sum never cancels and its degree is the max.
    let mut lo: Option<u64> = None;
    let mut hi: Option<u64> = Some(0);
    for bit in n.bits_msb_first() {
        let sum = lo.max(hi);
        if bit {
            lo = sum;
            hi = hi.map(|d| d + 1);
        } else {
            hi = sum;
            lo = lo.map(|d| d + 1);
        }
    }
    lo.ok_or(SternError::UndefinedDegree)
}

/// `sum_i (# hyperbinary representations of n with exactly i ones) t^i`.
pub fn hyperbinary_poly(n: &SternIndex) -> IntPolynomial {
    fn go(n: &BigUint, memo: &mut HashMap<BigUint, IntPolynomial>) -> IntPolynomial {
        if n.is_zero() {
            return IntPolynomial::one();
        }
        if let Some(p) = memo.get(n) {
            return p.clone();
        }
        let two = BigUint::from(2u32);
        let p = if n.is_odd() {
            // lowest digit must be 1
            go(&(n >> 1u32), memo).shift(1)
        } else {
            // lowest digit 0 or 2
            let a = go(&(n >> 1u32), memo);
            let b = go(&((n - &two) >> 1u32), memo);
            &a + &b
        };
        memo.insert(n.clone(), p.clone());
        p
    }
    let mut memo = HashMap::new();
    go(n.value(), &mut memo)
}

/// `(B_0, ..., B_N)` read off `x * prod_j (1 + t x^{2^j} + x^{2^{j+1}})`.
pub fn gf_prefix(n_max: usize) -> Vec<IntPolynomial> {
    // series[i] is the coefficient of x^i in the product, needed for i < n_max.
    let mut series = vec![IntPolynomial::zero(); n_max.max(1)];
    series[0] = IntPolynomial::one();
    let t = IntPolynomial::t();
    let mut step = 1usize;
    while step < n_max {
        let mut next = series.clone();
        for i in 0..series.len() {
            if series[i].is_zero() {
                continue;
            }
            if i + step < next.len() {
                next[i + step] = &next[i + step] + &(&series[i] * &t);
            }
            if i + 2 * step < next.len() {
                next[i + 2 * step] = &next[i + 2 * step] + &series[i];
            }
        }
        series = next;
        step *= 2;
    }
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(IntPolynomial::zero());
    out.extend(series.into_iter().take(n_max));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn idx(n: u64) -> SternIndex {
        SternIndex::new(n)
    }

    #[test]
    fn pair_examples() {
        let z = stern_pair(&idx(0));
        assert!(z.lo.is_zero());
        assert_eq!(z.hi, p(&[1]));
        let five = stern_pair(&idx(5));
        assert_eq!(five.lo, p(&[1, 2]));
        assert_eq!(five.hi, p(&[0, 1, 1]));
        assert_eq!(stern_pair(&idx(13)).lo, p(&[1, 2, 2]));
    }

    #[test]
    fn poly_examples() {
        assert_eq!(stern_poly_u64(19), p(&[1, 3, 3]));
        assert_eq!(stern_poly_u64(211), p(&[1, 5, 10, 10, 5]));
        for k in 0..12 {
            assert_eq!(
                stern_poly_u64((1 << (k + 1)) - 1),
                crate::poly::geometric(k as usize + 1)
            );
        }
    }

    #[test]
    fn number_examples() {
        assert_eq!(stern_number(&idx(21)), BigUint::from(8u32));
        assert_eq!(stern_number(&idx(0)), BigUint::zero());
        for k in 0..=20 {
            assert_eq!(stern_number(&idx(1 << k)), BigUint::one());
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(stern_degree(&idx(19)), Ok(2));
        assert_eq!(stern_degree(&idx(629)), Ok(5));
        for k in 0..40 {
            assert_eq!(stern_degree(&idx(1 << k)), Ok(k));
        }
        assert_eq!(stern_degree(&idx(0)), Err(SternError::UndefinedDegree));
    }

    #[test]
    fn hyperbinary_examples() {
        assert_eq!(hyperbinary_poly(&idx(2)), p(&[1, 1]));
        assert_eq!(hyperbinary_poly(&idx(4)), p(&[1, 2]));
        assert_eq!(hyperbinary_poly(&idx(0)), p(&[1]));
    }

    /// Enumerate digit strings in {0,1,2} directly.
    fn brute_hyperbinary(n: u64) -> IntPolynomial {
        let len = 64 - n.leading_zeros() as usize + 1;
        let mut counts = vec![0i64; len + 1];
        let total = 3u64.pow(len as u32);
        for code in 0..total {
            let mut c = code;
            let mut value = 0u64;
            let mut ones = 0;
            for i in 0..len {
                let d = c % 3;
                c /= 3;
                value += d << i;
                if d == 1 {
                    ones += 1;
                }
            }
            if value == n {
                counts[ones] += 1;
            }
        }
        p(&counts)
    }

    #[test]
    fn hyperbinary_matches_enumeration() {
        for n in 0..200 {
            assert_eq!(hyperbinary_poly(&idx(n)), brute_hyperbinary(n), "n={n}");
        }
    }

    #[test]
    fn gf_examples() {
        assert_eq!(gf_prefix(1), vec![IntPolynomial::zero(), p(&[1])]);
        assert_eq!(gf_prefix(5)[5], p(&[1, 2]));
        assert_eq!(gf_prefix(13)[13], p(&[1, 2, 2]));
    }

    #[test]
    fn index_parsing() {
        assert_eq!("87211".parse::<SternIndex>().unwrap(), idx(87211));
        assert!("-3".parse::<SternIndex>().is_err());
        assert_eq!(idx(19).binary(), "10011");
    }
}
