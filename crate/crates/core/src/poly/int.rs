//! Dense univariate polynomials over arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PolyError;

/// Polynomial `c[0] + c[1] t + ... + c[d] t^d` with integer coefficients.
///
/// The coefficient vector is kept canonical: the last entry is nonzero, and
/// the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// The monomial `c t^k`.
    pub fn monomial<T: Into<BigInt>>(c: T, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^i`; zero outside the stored range.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `t^deg p(1/t)`: the coefficient sequence reversed.
    pub fn reverse(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().rev().cloned().collect())
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `p / content(p)`, sign preserved.
    pub fn primitive_signed(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.content();
        Self::from_coeffs(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// `p / content(p)` with a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::from_coeffs(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact quotient `self / den` over the integers.
    pub fn divide_exact(&self, den: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem_exact(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible)
        }
    }

    /// Schoolbook long division that fails as soon as a quotient coefficient
    /// is not an integer.
    fn div_rem_exact(&self, den: &Self) -> Result<(Self, Self), PolyError> {
        let dd = den.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = &den.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            for (j, d) in den.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Pseudo-remainder of `self` by `den`, scaled by a *positive* power of
    /// `|lc(den)|` so that the sign of the result is meaningful for Sturm
    /// sequences.
    pub fn pseudo_rem(&self, den: &Self) -> Result<Self, PolyError> {
        let dd = den.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = den.coeffs[dd].clone();
        let lead_abs = lead.abs();
        let lead_sign = lead.signum();
        let mut rem = self.coeffs.clone();
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = rem[top].clone();
            if c.is_zero() {
                rem.pop();
                continue;
            }
            for x in rem.iter_mut() {
                *x *= &lead_abs;
            }
            // rem[top] is now c*|lc|; subtract (c*sign(lc)) t^k den.
            let f = &c * &lead_sign;
            let k = top - dd;
            for (j, d) in den.coeffs.iter().enumerate() {
                rem[k + j] -= &f * d;
            }
            debug_assert!(rem[top].is_zero());
            rem.pop();
        }
        Ok(Self::from_coeffs(rem))
    }

    /// Primitive part of the gcd over `Z[t]` (contents are ignored), with a
    /// positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("b is nonzero").primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Comma-separated ascending coefficients, e.g. `1,2` for `1+2t`.
    /// The zero polynomial renders as `0`.
    pub fn to_csv_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Human-readable descending form, e.g. `2t^2+2t+1`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push('t'),
                _ => {
                    out.push_str("t^");
                    out.push_str(&i.to_string());
                }
            }
        }
        out
    }
}

/// `1 + t + ... + t^{n-1}`, i.e. `(t^n - 1)/(t - 1)`; zero for `n = 0`.
pub fn geometric(n: usize) -> IntPolynomial {
    IntPolynomial::from_coeffs(vec![BigInt::one(); n])
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({})", self.pretty())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl FromStr for IntPolynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::zero());
        }
        s.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<BigInt>()
                    .map_err(|_| PolyError::Parse(tok.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_coeffs)
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_coeffs)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: &IntPolynomial) -> IntPolynomial {
                (&self).$m(rhs)
            }
        }
        impl $tr<IntPolynomial> for &IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}
