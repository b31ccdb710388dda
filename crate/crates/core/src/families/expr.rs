//! Index literals: decimal, `2^a`, `2^a+b`, `2^a-b`, or a family reference
//! such as `p[3,2]`, `s[0,4]`, `h[2]`, `H[1]`, `alpha[7]`.

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use super::{family_index, FamilyError, FamilyId};
use crate::stern::SternIndex;

fn bad(s: &str) -> FamilyError {
    FamilyError::UnknownFamily(s.to_string())
}

fn num<T: std::str::FromStr>(s: &str, whole: &str) -> Result<T, FamilyError> {
    s.trim().parse().map_err(|_| bad(whole))
}

fn family_ref(name: &str, args: &[u64], whole: &str) -> Result<SternIndex, FamilyError> {
    let (family, n) = match (name, args) {
        ("p", &[k, n]) => (FamilyId::P(u32::try_from(k).map_err(|_| bad(whole))?), n),
        ("s", &[i, n]) => (FamilyId::S(u8::try_from(i).map_err(|_| bad(whole))?), n),
        (_, &[n]) => (name.parse::<FamilyId>()?, n),
        _ => return Err(bad(whole)),
    };
    if matches!((name, family), ("p", FamilyId::P(k)) if k < 2) || matches!(family, FamilyId::S(i) if i > 3) {
        return Err(bad(whole));
    }
    family_index(family, n)
}

/// Parse an index literal.
pub fn parse_index(s: &str) -> Result<SternIndex, FamilyError> {
    let t = s.trim();
    if let Some((name, rest)) = t.split_once('[') {
        let inner = rest.strip_suffix(']').ok_or_else(|| bad(s))?;
        let args = inner
            .split(',')
            .map(|a| num::<u64>(a, s))
            .collect::<Result<Vec<_>, _>>()?;
        return family_ref(name.trim(), &args, s);
    }
    if let Some(rest) = t.strip_prefix("2^") {
        let split = rest.find(['+', '-']);
        let (exp, offset) = match split {
            Some(i) => {
                let off: BigInt = num(&rest[i + 1..], s)?;
                (&rest[..i], if &rest[i..=i] == "-" { -off } else { off })
            }
            None => (rest, BigInt::from(0)),
        };
        let e: u32 = num(exp, s)?;
        let v = (BigInt::from(1) << e) + offset;
        if v.is_negative() {
            return Err(bad(s));
        }
        return Ok(SternIndex::from(v.to_biguint().expect("nonnegative")));
    }
    Ok(SternIndex::from(num::<BigUint>(t, s)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{h_index, p_index, s_index};

    #[test]
    fn literals() {
        assert_eq!(parse_index("19").unwrap(), SternIndex::new(19));
        assert_eq!(parse_index("2^5-1").unwrap(), SternIndex::new(31));
        assert_eq!(parse_index("2^10 + 3").unwrap(), SternIndex::new(1027));
        assert_eq!(parse_index("2^3").unwrap(), SternIndex::new(8));
        assert_eq!(parse_index("p[3,2]").unwrap(), p_index(3, 2));
        assert_eq!(parse_index("s[1,4]").unwrap(), s_index(1, 4));
        assert_eq!(parse_index("h[2]").unwrap(), h_index(2));
        assert_eq!(parse_index("H[1]").unwrap(), h_index(1));
        assert_eq!(parse_index("alpha[5]").unwrap(), SternIndex::new(11));
        assert_eq!(
            parse_index("123456789012345678901234567890").unwrap().to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn rejects() {
        for s in ["", "x", "2^", "2^3-9", "p[1,2]", "p[3]", "s[4,1]", "q[1]", "p[3,2", "-5"] {
            assert!(parse_index(s).is_err(), "{s}");
        }
    }
}
