//! Real-root counting and the Eisenstein test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntPolynomial, PolyError};

/// Sturm sequence built from primitive negated pseudo-remainders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    pub fn new(p: &IntPolynomial) -> Result<Self, PolyError> {
        if p.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut chain = vec![p.primitive_signed()];
        let d = p.derivative();
        if d.is_zero() {
            return Ok(Self { chain });
        }
        chain.push(d.primitive_signed());
        loop {
            let n = chain.len();
            // pseudo_rem scales by a positive factor, so -prem keeps the
            // sign pattern of the classical remainder sequence.
            let r = chain[n - 2]
                .pseudo_rem(&chain[n - 1])
                .expect("chain entries are nonzero");
            if r.is_zero() {
                break;
            }
            chain.push((-r).primitive_signed());
        }
        Ok(Self { chain })
    }

    pub fn polys(&self) -> &[IntPolynomial] {
        &self.chain
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn sign_at_pos_inf(p: &IntPolynomial) -> i8 {
        p.leading().map_or(0, |c| c.signum().try_into().unwrap())
    }

    fn sign_at_neg_inf(p: &IntPolynomial) -> i8 {
        let s = Self::sign_at_pos_inf(p);
        match p.degree() {
            Some(d) if d % 2 == 1 => -s,
            _ => s,
        }
    }

    /// Number of distinct real roots: `V(-inf) - V(+inf)`.
    pub fn distinct_real_roots(&self) -> usize {
        let neg = Self::variations(self.chain.iter().map(Self::sign_at_neg_inf));
        let pos = Self::variations(self.chain.iter().map(Self::sign_at_pos_inf));
        neg - pos
    }
}

/// Number of distinct real roots of a nonzero polynomial.
pub fn count_real_roots(p: &IntPolynomial) -> Result<usize, PolyError> {
    Ok(SturmChain::new(p)?.distinct_real_roots())
}

/// Yun's squarefree decomposition: `p = c * prod f_i^i` with each `f_i`
/// primitive and squarefree. Returns `f_1, f_2, ...` (entries may be 1).
///
/// Every gcd is primitive, so by Gauss's lemma all divisions stay in `Z[t]`.
pub fn squarefree_decomposition(p: &IntPolynomial) -> Result<Vec<IntPolynomial>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let f = p.primitive_part();
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.divide_exact(&a0)?;
    let mut d = &df.divide_exact(&a0)? - &b.derivative();
    let mut out = Vec::new();
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.divide_exact(&a)?;
        let c = d.divide_exact(&a)?;
        d = &c - &b.derivative();
        out.push(a);
    }
    Ok(out)
}

/// Product of the squarefree factors that occur with odd multiplicity.
pub fn odd_multiplicity_part(p: &IntPolynomial) -> Result<IntPolynomial, PolyError> {
    let factors = squarefree_decomposition(p)?;
    Ok(factors
        .iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 0)
        .fold(IntPolynomial::one(), |acc, (_, f)| &acc * f))
}

/// Whether `t -> p(t)` is nondecreasing on the whole real line: `p'` has a
/// positive leading coefficient and no real root of odd multiplicity.
pub fn is_increasing(p: &IntPolynomial) -> bool {
    let d = p.derivative();
    match d.leading() {
        None => false,
        Some(lc) if !lc.is_positive() => false,
        Some(_) => {
            let odd = odd_multiplicity_part(&d).expect("nonzero derivative");
            count_real_roots(&odd).expect("nonzero") == 0
        }
    }
}

/// Eisenstein's criterion at `q`: `q` does not divide the leading
/// coefficient, divides all others, and `q^2` does not divide the constant.
pub fn eisenstein_irreducible(p: &IntPolynomial, q: u64) -> bool {
    let Some(d) = p.degree() else { return false };
    if d == 0 {
        return false;
    }
    let q = BigInt::from(q);
    let cs = p.coeffs();
    if cs[d].is_multiple_of(&q) {
        return false;
    }
    if !cs[..d].iter().all(|c| c.is_multiple_of(&q)) {
        return false;
    }
    !cs[0].is_multiple_of(&(&q * &q)) && !cs[0].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn root_count_examples() {
        assert_eq!(count_real_roots(&p(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(count_real_roots(&p(&[-1, 0, 1])).unwrap(), 2);
        assert_eq!(count_real_roots(&p(&[1, 3, 3])).unwrap(), 0);
        assert_eq!(count_real_roots(&p(&[5])).unwrap(), 0);
        assert_eq!(count_real_roots(&p(&[1, 2])).unwrap(), 1);
        assert_eq!(
            count_real_roots(&IntPolynomial::zero()),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn distinct_semantics() {
        let cubic = &(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[-3, 1]);
        assert_eq!(count_real_roots(&cubic).unwrap(), 3);
        assert_eq!(count_real_roots(&(&cubic * &cubic)).unwrap(), 3);
        // (t+1)^3 (t^2+1)
        let q = &(&(&p(&[1, 1]) * &p(&[1, 1])) * &p(&[1, 1])) * &p(&[1, 0, 1]);
        assert_eq!(count_real_roots(&q).unwrap(), 1);
        // negative leading coefficient
        assert_eq!(count_real_roots(&-cubic).unwrap(), 3);
    }

    #[test]
    fn squarefree_parts() {
        // (t-1)^2 (t+2)^3 (t^2+1)
        let a = p(&[-1, 1]);
        let b = p(&[2, 1]);
        let c = p(&[1, 0, 1]);
        let f = &(&(&(&a * &a) * &(&(&b * &b) * &b)) * &c) * &IntPolynomial::constant(6);
        let parts = squarefree_decomposition(&f).unwrap();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], c);
        assert_eq!(parts[1], a);
        assert_eq!(parts[2], b);
        assert_eq!(odd_multiplicity_part(&f).unwrap(), &c * &b);
    }

    #[test]
    fn monotonicity() {
        assert!(is_increasing(&p(&[1, 2])));
        assert!(!is_increasing(&p(&[1, -2])));
        // t^3 has derivative 3t^2 with a double root: still increasing.
        assert!(is_increasing(&p(&[0, 0, 0, 1])));
        assert!(!is_increasing(&p(&[0, -1, 0, 1])));
        assert!(!is_increasing(&p(&[7])));
    }

    #[test]
    fn eisenstein_examples() {
        // reverse(B_13) = t^2 + 2t + 2
        assert!(eisenstein_irreducible(&p(&[1, 2, 2]).reverse(), 2));
        assert!(!eisenstein_irreducible(&p(&[1, 1, 1]), 2));
        assert!(!eisenstein_irreducible(&p(&[4, 2, 1]), 2));
        assert!(!eisenstein_irreducible(&p(&[2, 2, 2]), 2));
        assert!(!eisenstein_irreducible(&p(&[3]), 3));
    }
}
