//! Closed-form index families.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::FamilyError;
use crate::stern::SternIndex;

/// A named index family `n -> a_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FamilyId {
    /// `2^{n+1} - 1`, whose polynomial is `1 + t + ... + t^n`.
    TrivialAllOnes,
    /// `2^{n+2} - 3`, whose polynomial is `1 + 2(t + ... + t^n)`.
    TrivialTwos,
    /// `p_{k,n} = 2^{2n+k} - 3*2^{n+k-1} + 2^k - 3`, `k >= 2`.
    P(u32),
    /// The four `s_{i,n}` sequences, `i` in `0..=3`.
    S(u8),
    /// `h_n = (2/3)(2^{2n} - 1)(2^{2n+1} + 1) + 1`.
    H,
    /// `H_n = h_{(3^n - 1)/2}`.
    BigH,
    /// Jacobsthal numbers `(2^n - (-1)^n)/3`.
    Alpha,
    /// `(5*2^{n-2} + (-1)^n)/3`.
    Beta,
}

impl FamilyId {
    /// Smallest admissible parameter.
    pub fn first_param(self) -> u64 {
        match self {
            FamilyId::P(_) | FamilyId::S(_) => 1,
            // alpha_1 = alpha_2 = 1, so the strictly increasing range starts at 2.
            FamilyId::Alpha | FamilyId::Beta => 2,
            _ => 0,
        }
    }

    fn check(self, n: u64) -> Result<(), FamilyError> {
        let ok_family = match self {
            FamilyId::P(k) => k >= 2,
            FamilyId::S(i) => i <= 3,
            _ => true,
        };
        let ok_param = n >= self.first_param()
            && match self {
                FamilyId::BigH => n <= 40,
                FamilyId::H | FamilyId::P(_) | FamilyId::S(_) => n <= (1 << 24),
                _ => n <= (1 << 26),
            };
        if ok_family && ok_param {
            Ok(())
        } else {
            Err(FamilyError::OutOfDomain { family: self, n })
        }
    }

    /// Whether `n` belongs to the family (linear scan up to `n`).
    pub fn contains(self, n: &BigUint) -> bool {
        let mut j = self.first_param();
        loop {
            match family_index(self, j) {
                Ok(v) => {
                    let v = v.into_inner();
                    if &v == n {
                        return true;
                    }
                    if &v > n {
                        return false;
                    }
                }
                Err(_) => return false,
            }
            j += 1;
        }
    }

    pub fn contains_u64(self, n: u64) -> bool {
        match self {
            FamilyId::TrivialAllOnes => n != u64::MAX && (n + 1).is_power_of_two() && n >= 1,
            FamilyId::TrivialTwos => (1..=u64::MAX - 3).contains(&n) && (n + 3).is_power_of_two(),
            _ => self.contains(&BigUint::from(n)),
        }
    }
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

fn to_index(v: BigInt) -> SternIndex {
    debug_assert!(!v.is_negative());
    SternIndex::from(v.to_biguint().expect("family values are nonnegative"))
}

/// `(2^n - (-1)^n)/3` for any `n >= 0`.
pub fn jacobsthal(n: u64) -> SternIndex {
    let sign = if n.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    to_index((pow2(n) - sign) / 3)
}

/// `h_n` for any `n >= 0`.
pub fn h_index(n: u64) -> SternIndex {
    let a = pow2(2 * n) - 1;
    let b = pow2(2 * n + 1) + 1;
    to_index((BigInt::from(2) * a * b) / 3 + 1)
}

/// `p_{k,n}` without domain checks (used by identities that step outside
/// the declared domain).
pub fn p_index(k: u64, n: u64) -> SternIndex {
    to_index(pow2(2 * n + k) - BigInt::from(3) * pow2(n + k - 1) + pow2(k) - 3)
}

/// `s_{i,n}` without domain checks.
pub fn s_index(i: u8, n: u64) -> SternIndex {
    let v = match i {
        0 => pow2(2 * n + 4) - BigInt::from(9) * pow2(n + 1) - 1,
        1 => pow2(2 * n + 5) - BigInt::from(9) * pow2(n + 2) - 5,
        2 => pow2(2 * n + 8) - BigInt::from(9) * pow2(n + 4) - 13,
        3 => pow2(2 * n + 8) - BigInt::from(51) * pow2(n + 2) - 1,
        _ => panic!("s-family index {i} out of range"),
    };
    to_index(v)
}

/// Exact value of the family's closed form at `n`.
pub fn family_index(f: FamilyId, n: u64) -> Result<SternIndex, FamilyError> {
    f.check(n)?;
    Ok(match f {
        FamilyId::TrivialAllOnes => to_index(pow2(n + 1) - 1),
        FamilyId::TrivialTwos => to_index(pow2(n + 2) - 3),
        FamilyId::P(k) => p_index(k as u64, n),
        FamilyId::S(i) => s_index(i, n),
        FamilyId::H => h_index(n),
        FamilyId::BigH => {
            let j = (3u64.pow(n as u32) - 1) / 2;
            h_index(j)
        }
        FamilyId::Alpha => jacobsthal(n),
        FamilyId::Beta => {
            let sign = if n.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
            to_index((BigInt::from(5) * pow2(n - 2) + sign) / 3)
        }
    })
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::TrivialAllOnes => f.write_str("trivial-all-ones"),
            FamilyId::TrivialTwos => f.write_str("trivial-twos"),
            FamilyId::P(k) => write!(f, "p{k}"),
            FamilyId::S(i) => write!(f, "s{i}"),
            FamilyId::H => f.write_str("h"),
            FamilyId::BigH => f.write_str("H"),
            FamilyId::Alpha => f.write_str("alpha"),
            FamilyId::Beta => f.write_str("beta"),
        }
    }
}

impl FromStr for FamilyId {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::UnknownFamily(s.to_string());
        let id = match s.trim() {
            "trivial-all-ones" => FamilyId::TrivialAllOnes,
            "trivial-twos" => FamilyId::TrivialTwos,
            "h" => FamilyId::H,
            "H" => FamilyId::BigH,
            "alpha" => FamilyId::Alpha,
            "beta" => FamilyId::Beta,
            other => {
                if let Some(k) = other.strip_prefix('p') {
                    FamilyId::P(k.parse().map_err(|_| bad())?)
                } else if let Some(i) = other.strip_prefix('s') {
                    FamilyId::S(i.parse().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            }
        };
        match id {
            FamilyId::P(k) if k < 2 => Err(bad()),
            FamilyId::S(i) if i > 3 => Err(bad()),
            _ => Ok(id),
        }
    }
}

impl From<FamilyId> for String {
    fn from(f: FamilyId) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for FamilyId {
    type Error = FamilyError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Convenience: `n`-th value as a machine integer if it fits.
pub fn family_index_u64(f: FamilyId, n: u64) -> Option<u64> {
    family_index(f, n).ok()?.to_u64()
}
