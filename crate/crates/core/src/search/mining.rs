//! Fitting `U_n = p*4^n + q*2^n + u` through four known solutions and
//! testing the fitted family further out.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{is_solution, CongruenceSpec, SearchError};
use crate::stern::SternIndex;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineTriple {
    #[serde(with = "ratio_string")]
    pub p: BigRational,
    #[serde(with = "ratio_string")]
    pub q: BigRational,
    #[serde(with = "ratio_string")]
    pub u: BigRational,
}

impl AffineTriple {
    /// The triple through `U_0..U_2`, if `U_3` lies on it too.
    pub fn fit(v: [u64; 4]) -> Option<Self> {
        let v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let d1 = v[1] - v[0];
        let d2 = v[2] - v[1];
        let d3 = v[3] - v[2];
        if d3 - 2 * d2 != 4 * (d2 - 2 * d1) {
            return None;
        }
        let r = |n: i128| BigRational::from_integer(BigInt::from(n));
        let p = r(d2 - 2 * d1) / r(6);
        let q = r(d1) - &p * r(3);
        let u = r(v[0]) - &p - &q;
        Some(AffineTriple { p, q, u })
    }

    /// `U_n`, exactly.
    pub fn term(&self, n: u32) -> BigRational {
        let two_n = BigRational::from_integer(BigInt::one() << n);
        &self.p * &two_n * &two_n + &self.q * &two_n + &self.u
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// `U_4 ..= U_{3+depth}` all satisfy the congruence.
    Validated { depth: u32 },
    /// First index at which the family leaves the solution set.
    Rejected {
        index: u32,
        value: String,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinedFamily {
    pub triple: AffineTriple,
    /// First quadruple (in lexicographic order) that produced the triple.
    pub quadruple: [u64; 4],
    #[serde(flatten)]
    pub verdict: Verdict,
}

fn validate(triple: &AffineTriple, depth: u32, spec: &CongruenceSpec) -> Verdict {
    for index in 4..4 + depth {
        let value = triple.term(index);
        let reject = |reason: &str| Verdict::Rejected {
            index,
            value: value.to_string(),
            reason: reason.to_string(),
        };
        if !value.is_integer() {
            return reject("not an integer");
        }
        let n = value.to_integer();
        if !n.is_positive() {
            return reject("not positive");
        }
        if n.is_even() {
            return reject("even");
        }
        let idx = SternIndex::from(n.to_biguint().expect("positive"));
        if !is_solution(&idx, spec).expect("odd index") {
            return reject("congruence fails");
        }
    }
    Verdict::Validated { depth }
}

/// Every distinct triple fitted through an increasing quadruple of
/// `solutions`, each validated `depth` terms beyond the quadruple.
///
/// Given the first three terms the fourth is determined, so the scan is
/// cubic with a binary search for the fourth.
pub fn mine_affine_families(
    solutions: &[u64],
    depth: u32,
    spec: &CongruenceSpec,
) -> Result<Vec<MinedFamily>, SearchError> {
    let mut sol = solutions.to_vec();
    sol.sort_unstable();
    sol.dedup();
    if sol.len() < 4 {
        return Err(SearchError::TooFewSolutions(sol.len()));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let n = sol.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (v0, v1, v2) = (sol[a] as i128, sol[b] as i128, sol[c] as i128);
                let d1 = v1 - v0;
                let d2 = v2 - v1;
                let d3 = 2 * d2 + 4 * (d2 - 2 * d1);
                if d3 <= 0 {
                    continue;
                }
                let Some(v3) = (v2 + d3).to_u64() else { continue };
                if sol[c + 1..].binary_search(&v3).is_err() {
                    continue;
                }
                let quad = [sol[a], sol[b], sol[c], v3];
                let triple = AffineTriple::fit(quad).expect("consistent by construction");
                if seen.insert(triple.clone()) {
                    let verdict = validate(&triple, depth, spec);
                    out.push(MinedFamily {
                        triple,
                        quadruple: quad,
                        verdict,
                    });
                }
            }
        }
    }
    Ok(out)
}

mod ratio_string {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn fit_examples() {
        let t = AffineTriple::fit([5, 41, 209, 929]).unwrap();
        assert_eq!((t.p.clone(), t.q.clone(), t.u.clone()), (rat(16, 1), rat(-12, 1), rat(1, 1)));
        let t = AffineTriple::fit([5, 29, 253, 1405]).unwrap();
        assert_eq!(t.p, rat(88, 3));
        assert_eq!(t.q, rat(-64, 1));
        assert_eq!(t.u, rat(119, 3));
        assert_eq!(t.term(4), rat(6525, 1));
        assert!(AffineTriple::fit([1, 3, 5, 7]).is_none());
    }

    #[test]
    fn validation_verdicts() {
        let spec = CongruenceSpec::new(0, 2).unwrap();
        let good = AffineTriple::fit([5, 41, 209, 929]).unwrap();
        assert_eq!(validate(&good, 8, &spec), Verdict::Validated { depth: 8 });
        let bad = AffineTriple::fit([5, 29, 253, 1405]).unwrap();
        match validate(&bad, 8, &spec) {
            Verdict::Rejected { index, value, .. } => {
                assert_eq!(index, 4);
                assert_eq!(value, "6525");
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn too_few() {
        let spec = CongruenceSpec::new(0, 2).unwrap();
        assert!(matches!(
            mine_affine_families(&[5, 29, 41], 2, &spec),
            Err(SearchError::TooFewSolutions(3))
        ));
    }

    #[test]
    fn serde_round_trip() {
        let fam = MinedFamily {
            triple: AffineTriple::fit([5, 29, 253, 1405]).unwrap(),
            quadruple: [5, 29, 253, 1405],
            verdict: Verdict::Validated { depth: 1 },
        };
        let json = serde_json::to_string(&fam).unwrap();
        assert!(json.contains("\"88/3\""));
        let back: MinedFamily = serde_json::from_str(&json).unwrap();
        assert_eq!(back, fam);
    }
}
