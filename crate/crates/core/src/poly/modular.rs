//! Polynomials over `Z/m` with a tracked formal degree.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{IntPolynomial, PolyError};

pub const MAX_MODULUS: u32 = 65_535;

/// Residue polynomial. `coeffs.len() == formal_degree + 1`; the top residues
/// may be zero because reduction can kill a leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModPolynomial {
    modulus: u16,
    coeffs: Vec<u16>,
}

pub(crate) fn check_modulus(m: u32) -> Result<u16, PolyError> {
    if (2..=MAX_MODULUS).contains(&m) {
        Ok(m as u16)
    } else {
        Err(PolyError::BadModulus(m))
    }
}

impl ModPolynomial {
    /// All-zero polynomial of the given formal degree.
    pub fn zeros(modulus: u32, formal_degree: usize) -> Result<Self, PolyError> {
        let modulus = check_modulus(modulus)?;
        Ok(Self {
            modulus,
            coeffs: vec![0; formal_degree + 1],
        })
    }

    pub fn from_residues(modulus: u32, residues: &[u64]) -> Result<Self, PolyError> {
        let m = check_modulus(modulus)?;
        let mut coeffs: Vec<u16> = residues.iter().map(|&r| (r % m as u64) as u16).collect();
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        Ok(Self { modulus: m, coeffs })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus as u32
    }

    pub fn formal_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u16] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u16 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    fn with_degree(&self, fd: usize) -> Vec<u16> {
        let mut v = self.coeffs.clone();
        v.resize(fd + 1, 0);
        v
    }

    fn assert_same_ring(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
    }

    /// Sum; formal degree is the max of the two.
    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let fd = self.formal_degree().max(other.formal_degree());
        let m = self.modulus as u32;
        let mut coeffs = self.with_degree(fd);
        for (c, &o) in coeffs.iter_mut().zip(&other.coeffs) {
            let s = *c as u32 + o as u32;
            *c = if s >= m { (s - m) as u16 } else { s as u16 };
        }
        Self {
            modulus: self.modulus,
            coeffs,
        }
    }

    /// Product; formal degree is the sum of the two.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let m = self.modulus as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % m;
            }
        }
        Self {
            modulus: self.modulus,
            coeffs: acc.into_iter().map(|c| c as u16).collect(),
        }
    }

    /// Multiply by `t`.
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(0);
        coeffs.extend_from_slice(&self.coeffs);
        Self {
            modulus: self.modulus,
            coeffs,
        }
    }

    /// Residues with trailing zeros removed.
    pub fn trimmed(&self) -> &[u16] {
        let end = self
            .coeffs
            .iter()
            .rposition(|&c| c != 0)
            .map_or(0, |i| i + 1);
        &self.coeffs[..end]
    }

    /// Same residues, formal degrees ignored.
    pub fn congruent(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.trimmed() == other.trimmed()
    }
}

/// Reduce each coefficient into `[0, m)` (negative inputs map to the
/// nonnegative residue) at the given formal degree.
pub fn reduce_mod(
    p: &IntPolynomial,
    modulus: u32,
    formal_degree: usize,
) -> Result<ModPolynomial, PolyError> {
    let m = check_modulus(modulus)?;
    if let Some(d) = p.degree() {
        if d > formal_degree {
            return Err(PolyError::FormalDegreeTooSmall {
                degree: d,
                formal_degree,
            });
        }
    }
    let big_m = BigInt::from(m);
    let mut coeffs = vec![0u16; formal_degree + 1];
    for (c, x) in coeffs.iter_mut().zip(p.coeffs()) {
        let r = ((x % &big_m) + &big_m) % &big_m;
        *c = r.to_u16().expect("residue below modulus");
    }
    Ok(ModPolynomial { modulus: m, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        let b5 = IntPolynomial::from_i64s(&[1, 2]);
        assert_eq!(reduce_mod(&b5, 2, 1).unwrap().coeffs(), &[1, 0]);
        let b19 = IntPolynomial::from_i64s(&[1, 3, 3]);
        assert_eq!(reduce_mod(&b19, 3, 2).unwrap().coeffs(), &[1, 0, 0]);
        assert_eq!(reduce_mod(&IntPolynomial::zero(), 5, 0).unwrap().coeffs(), &[0]);
    }

    #[test]
    fn reduce_negative_and_errors() {
        let p = IntPolynomial::from_i64s(&[-1, -7, 5]);
        assert_eq!(reduce_mod(&p, 3, 3).unwrap().coeffs(), &[2, 2, 2, 0]);
        assert_eq!(reduce_mod(&p, 1, 2), Err(PolyError::BadModulus(1)));
        assert_eq!(reduce_mod(&p, 70_000, 2), Err(PolyError::BadModulus(70_000)));
        assert!(matches!(
            reduce_mod(&p, 3, 1),
            Err(PolyError::FormalDegreeTooSmall { .. })
        ));
    }

    #[test]
    fn ring_ops() {
        let a = ModPolynomial::from_residues(5, &[4, 3]).unwrap();
        let b = ModPolynomial::from_residues(5, &[1, 4, 2]).unwrap();
        assert_eq!(a.add(&b).coeffs(), &[0, 2, 2]);
        assert_eq!(a.mul(&b).coeffs(), &[4, 4, 0, 1]);
        assert_eq!(a.shift().coeffs(), &[0, 4, 3]);
        let big = ModPolynomial::from_residues(65_535, &[65_534]).unwrap();
        assert_eq!(big.add(&big).coeffs(), &[65_533]);
    }
}
