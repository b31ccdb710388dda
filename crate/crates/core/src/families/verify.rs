//! Exact checks of the identities satisfied by the index families.
//!
//! Each `verify_*` function checks one parameter cell; the `*_sweep`
//! functions run a grid of cells in parallel and merge the reports.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::index::{h_index, jacobsthal, p_index, s_index};
use super::{precondition, sweep, FamilyError, FamilyId, IdentityReport};
use crate::grid::Grid;
use crate::poly::{geometric, IntPolynomial};
use crate::search::{is_solution, CongruenceSpec};
use crate::stern::{stern_number, stern_poly, stern_poly_u64, SternIndex};

fn b(n: &BigUint) -> IntPolynomial {
    stern_poly(&SternIndex::from(n.clone()))
}

fn bi(n: &SternIndex) -> IntPolynomial {
    stern_poly(n)
}

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

fn tp(k: usize) -> IntPolynomial {
    IntPolynomial::monomial(1, k)
}

fn p(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(c)
}

fn g(k: usize) -> IntPolynomial {
    geometric(k)
}

fn solves(n: &SternIndex, r: u32, m: u32) -> bool {
    let spec = CongruenceSpec::new(r, m).expect("valid congruence");
    is_solution(n, &spec).unwrap_or(false)
}

/// `c_0 = 1` and every other coefficient is `= r (mod m)`, read off the
/// exact polynomial.
fn coefficients_match(poly: &IntPolynomial, r: i64, m: i64) -> bool {
    let m = BigInt::from(m);
    let r = BigInt::from(r);
    poly.coeff(0) == BigInt::one()
        && poly.coeffs()[1..]
            .iter()
            .all(|c| (c - &r).mod_floor(&m).is_zero())
}

/// `B_{m 2^a + r} = B_{2^a - r} B_m + B_r B_{m+1}` and, for `m >= 1`,
/// `B_{m 2^a - r} = B_{2^a - r} B_m + B_r B_{m-1}`.
pub fn verify_lemma1(a: u32, m: u64, r: u64) -> Result<IdentityReport, FamilyError> {
    precondition(a < 63 && r <= 1u64 << a, || format!("need 0 <= r <= 2^a (a={a}, r={r})"))?;
    let cell = format!("a={a},m={m},r={r}");
    let mut rep = IdentityReport::new("lemma1", &cell);
    let top = (1u64 << a) - r;
    let bm = stern_poly_u64(m);
    let shared = &stern_poly_u64(top) * &bm;
    let br = stern_poly_u64(r);
    let base = BigUint::from(m) << a;
    let lhs = b(&(&base + r));
    let rhs = &shared + &(&br * &stern_poly_u64(m + 1));
    rep.check_eq(&cell, "plus", &lhs, &rhs);
    if m >= 1 {
        let lhs = b(&(&base - r));
        let rhs = &shared + &(&br * &stern_poly_u64(m - 1));
        rep.check_eq(&cell, "minus", &lhs, &rhs);
    }
    Ok(rep)
}

/// Every `(a, m, r)` with `a`, `m` in range and `0 <= r <= 2^a`.
pub fn lemma1_sweep(
    a: std::ops::RangeInclusive<u64>,
    m: std::ops::RangeInclusive<u64>,
) -> Result<IdentityReport, FamilyError> {
    let params = format!("a={}..{},m={}..{},r=0..2^a", a.start(), a.end(), m.start(), m.end());
    let cells: Vec<(u32, u64)> = a
        .flat_map(|a| m.clone().map(move |m| (a as u32, m)))
        .collect();
    sweep("lemma1", params, cells, |&(a, m)| {
        precondition(a < 32, || format!("a={a} too large for an exhaustive sweep"))?;
        let reports = (0..=1u64 << a)
            .map(|r| verify_lemma1(a, m, r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IdentityReport::merge("lemma1", "", reports))
    })
}

/// Closed forms of `B_{2^n - 1}`, `B_{2^n - 3}`, `B_{2^n - 5}`, `B_{2^n - 9}`,
/// each checked when `n` is large enough for it.
pub fn verify_lemma2(n: u32) -> Result<IdentityReport, FamilyError> {
    precondition(n >= 1, || "need n >= 1".into())?;
    let cell = format!("n={n}");
    let mut rep = IdentityReport::new("lemma2", &cell);
    let nn = n as usize;
    let at = |k: u64| b(&(pow2(n as u64) - k));
    let t = IntPolynomial::t();
    rep.check_eq(&cell, "2^n-1", &at(1), &g(nn));
    if n >= 2 {
        rep.check_eq(&cell, "2^n-3", &at(3), &(&(&t * &g(nn - 2)) + &g(nn - 1)));
    }
    if n >= 3 {
        let rhs = &(&t * &g(nn - 3)) + &(&p(&[1, 1]) * &g(nn - 2));
        rep.check_eq(&cell, "2^n-5", &at(5), &rhs);
    }
    if n >= 4 {
        let rhs = &(&t * &g(nn - 4)) + &(&p(&[1, 1, 1]) * &g(nn - 3));
        rep.check_eq(&cell, "2^n-9", &at(9), &rhs);
    }
    Ok(rep)
}

/// `B_{2^n - k} = B_k (t^{n-m} - 1)/(t - 1) - B_l t^{n-m}` for odd
/// `k = 2^m + l`, `0 <= l < 2^m`.
pub fn verify_dkt(n: u32, k: u64) -> Result<IdentityReport, FamilyError> {
    precondition(k % 2 == 1, || format!("k={k} must be odd"))?;
    let m = 63 - k.leading_zeros();
    let l = k - (1u64 << m);
    precondition(n > m, || format!("need n >= {} for k={k}", m + 1))?;
    let cell = format!("n={n},k={k}");
    let mut rep = IdentityReport::new("dkt", &cell);
    let lhs = b(&(pow2(n as u64) - k));
    let e = (n - m) as usize;
    let rhs = &(&stern_poly_u64(k) * &g(e)) - &(&stern_poly_u64(l) * &tp(e));
    rep.check_eq(&cell, "identity", &lhs, &rhs);
    Ok(rep)
}

/// Odd `k` in range, `n` from `floor(log2 k) + 1` through `floor(log2 k) + extra`.
pub fn dkt_sweep(k: std::ops::RangeInclusive<u64>, extra: u32) -> Result<IdentityReport, FamilyError> {
    let params = format!("k={}..{} odd,n=log2(k)+1..log2(k)+{extra}", k.start(), k.end());
    let cells: Vec<(u32, u64)> = k
        .filter(|k| k % 2 == 1)
        .flat_map(|k| {
            let m = 63 - k.leading_zeros();
            (m + 1..=m + extra).map(move |n| (n, k))
        })
        .collect();
    sweep("dkt", params, cells, |&(n, k)| verify_dkt(n, k))
}

fn degree_law(k: i64, n: i64) -> i64 {
    (2 * n - 1).max(2 * n + k - 5).max(n + k - 2)
}

/// `p_{k,n}` solves the `(0, 2)` congruence; the product decomposition
/// behind it and its expanded form; the degree law.
pub fn verify_p_theorem(k: u32, n: u32) -> Result<IdentityReport, FamilyError> {
    precondition(k >= 2 && n >= 1, || format!("need k >= 2, n >= 1 (k={k}, n={n})"))?;
    let cell = format!("k={k},n={n}");
    let mut rep = IdentityReport::new("p-theorem", &cell);
    let (k64, n64) = (k as u64, n as u64);
    let idx = p_index(k64, n64);
    let v = bi(&idx);
    rep.check(&cell, "congruence (0,2)", solves(&idx, 0, 2), || {
        (v.pretty(), "1 (mod 2)".into())
    });
    rep.check(&cell, "coefficients even", coefficients_match(&v, 0, 2), || {
        (v.pretty(), "1 (mod 2)".into())
    });

    let q = pow2(k64) - 3u32; // 2^k - 3
    let first = &(&b(&(pow2(n64 + k64 - 1) - pow2(k64) + 3u32)) * &b(&(pow2(n64 + 1) - 3u32)))
        + &(&b(&q) * &b(&(pow2(n64 + 1) - 2u32)));
    rep.check_eq(&cell, "first decomposition", &v, &first);

    let half = pow2(n64 - 1);
    let inner = &(&stern_poly_u64(3) * &b(&half)) + &(&b(&q) * &b(&(&half - 1u32)));
    let second = &(&inner * &b(&(pow2(n64 + 1) - 3u32))) + &(&b(&q) * &b(&(pow2(n64 + 1) - 2u32)));
    rep.check_eq(&cell, "product decomposition", &v, &second);

    let (kk, nn) = (k as usize, n as usize);
    let t = IntPolynomial::t();
    let bq = &(&t * &g(kk - 2)) + &g(kk - 1);
    let left = &(&p(&[1, 1]) * &tp(nn - 1)) + &(&bq * &g(nn - 1));
    let right = &(&t * &g(nn - 1)) + &g(nn);
    let expanded = &(&left * &right) + &(&(&t * &bq) * &g(nn));
    rep.check_eq(&cell, "expanded form", &v, &expanded);

    let want = degree_law(k as i64, n as i64);
    let got = v.degree().map_or(-1, |d| d as i64);
    rep.check(&cell, "degree law", got == want, || (got.to_string(), want.to_string()));
    Ok(rep)
}

/// The expanded form of `V_{2,n} = B_{p_{2,n}}`.
pub fn v2_explicit(n: u32) -> IntPolynomial {
    if n == 1 {
        return p(&[1, 2]);
    }
    let n = n as i64;
    let mut c = vec![0i64; (2 * n) as usize];
    c[0] = 1;
    for i in 1..n {
        c[i as usize] += 2 * (i + 1);
        c[(n - 1 + i) as usize] += 2 * (n + 1 - i);
    }
    c[(2 * n - 1) as usize] += 2;
    p(&c)
}

/// The expanded form of `V_{3,n} = B_{p_{3,n}}`, with the trailing sum
/// taken over `i = 2..=n-1`.
pub fn v3_explicit(n: u32) -> IntPolynomial {
    v3_explicit_from(n, 2)
}

pub(crate) fn v3_explicit_from(n: u32, trailing_start: i64) -> IntPolynomial {
    if n == 1 {
        return p(&[1, 2, 2]);
    }
    let n = n as i64;
    let mut c = vec![0i64; (2 * n + 2) as usize];
    c[0] = 1;
    c[1] += 6;
    for i in 2..n {
        c[i as usize] += 2 * (3 * i + 1);
    }
    c[n as usize] += 2 * (3 * n - 1);
    c[(n + 1) as usize] += 2 * (3 * n - 4);
    for i in trailing_start..n {
        c[(n + i) as usize] += 2 * (3 * n - 3 * i - 2);
    }
    p(&c)
}

pub fn verify_v_explicit(k: u32, n: u32) -> Result<IdentityReport, FamilyError> {
    precondition((2..=3).contains(&k) && n >= 1, || format!("need k in {{2,3}}, n >= 1 (k={k}, n={n})"))?;
    let cell = format!("k={k},n={n}");
    let mut rep = IdentityReport::new("v-explicit", &cell);
    let v = bi(&p_index(k as u64, n as u64));
    let formula = if k == 2 { v2_explicit(n) } else { v3_explicit(n) };
    rep.check_eq(&cell, "expansion", &v, &formula);
    if k == 3 {
        rep.note("k=3 trailing sum read as i=2..n-1 with summand (3n-3i-2) t^(n+i)");
    }
    Ok(rep)
}

fn v(k: u32, n: u32) -> IntPolynomial {
    bi(&p_index(k as u64, n as u64))
}

/// `V_{k+1,n} = (t+1) V_{k,n} - t V_{k-1,n}`.
pub fn verify_v_recurrence(k: u32, n: u32) -> Result<IdentityReport, FamilyError> {
    precondition(k >= 3 && n >= 1, || format!("need k >= 3, n >= 1 (k={k}, n={n})"))?;
    let cell = format!("k={k},n={n}");
    let mut rep = IdentityReport::new("v-recurrence", &cell);
    let rhs = &(&p(&[1, 1]) * &v(k, n)) - &(&IntPolynomial::t() * &v(k - 1, n));
    rep.check_eq(&cell, "recurrence", &v(k + 1, n), &rhs);
    Ok(rep)
}

/// Coefficient recurrence, its iterated closed form, the table of
/// `c_{j,3} - c_{j,2}`, and the degree law, all read from exact `V_{j,n}`.
pub fn verify_c_machinery(k: u32, n: u32) -> Result<IdentityReport, FamilyError> {
    precondition(k >= 4 && n >= 3, || format!("need k >= 4, n >= 3 (k={k}, n={n})"))?;
    let cell = format!("k={k},n={n}");
    let mut rep = IdentityReport::new("c-machinery", &cell);
    let vs: Vec<IntPolynomial> = (0..=k).map(|j| if j < 2 { IntPolynomial::zero() } else { v(j, n) }).collect();
    let c = |i: i64, j: u32| -> BigInt {
        if i < 0 {
            BigInt::zero()
        } else {
            vs[j as usize].coeff(i as usize)
        }
    };
    let top = vs[k as usize].degree().unwrap_or(0) as i64 + 1;
    for i in 0..=top {
        let lhs = c(i, k);
        let rec = c(i - 1, k - 1) + c(i, k - 1) - c(i - 1, k - 2);
        rep.check(&cell, &format!("recurrence i={i}"), lhs == rec, || (lhs.to_string(), rec.to_string()));
        let mut closed = c(i, 2);
        for j in 0..=(k as i64 - 3) {
            let idx = i + j + 3 - k as i64;
            closed += c(idx, 3) - c(idx, 2);
        }
        rep.check(&cell, &format!("closed form i={i}"), lhs == closed, || (lhs.to_string(), closed.to_string()));
    }
    let nn = n as i64;
    for j in 0..=2 * nn + 1 {
        let want: i64 = match j {
            0 => 0,
            1 => 2,
            _ if j < nn => 4 * j,
            _ if j == nn => 4 * nn - 2,
            _ if j == nn + 1 => 4 * nn - 6,
            _ if j <= 2 * nn - 2 => 4 * (2 * nn - j - 1),
            _ => 0,
        };
        let got = c(j, 3) - c(j, 2);
        rep.check(&cell, &format!("difference table j={j}"), got == BigInt::from(want), || {
            (got.to_string(), want.to_string())
        });
    }
    let want = degree_law(k as i64, nn);
    let got = vs[k as usize].degree().map_or(-1, |d| d as i64);
    rep.check(&cell, "degree law", got == want, || (got.to_string(), want.to_string()));
    Ok(rep)
}

/// `B_{s_{0,n}}` in the explicit form, `n >= 2`.
pub fn s0_explicit(n: u32) -> IntPolynomial {
    s0_explicit_with(n, 3)
}

/// The explicit form with middle coefficients `4i + offset`, `2 <= i < n`.
pub(crate) fn s0_explicit_with(n: u32, offset: i64) -> IntPolynomial {
    let n = n as i64;
    let mut c = vec![0i64; (2 * n + 2) as usize];
    c[0] = 1;
    c[1] += 5;
    for i in 2..n {
        c[i as usize] += 4 * i + offset;
    }
    c[n as usize] += 4 * n + 1;
    c[(n + 1) as usize] += 4 * n - 1;
    for i in n + 2..=2 * n {
        c[i as usize] += 4 * (2 * n - i) + 3;
    }
    c[(2 * n + 1) as usize] += 1;
    p(&c)
}

fn monomials(terms: &[(i64, usize)]) -> IntPolynomial {
    terms
        .iter()
        .fold(IntPolynomial::zero(), |acc, &(c, e)| &acc + &IntPolynomial::monomial(c, e))
}

/// `s_{i,n}` solves the `(1, 2)` congruence and is divisible by 3; for
/// `i = 0` also the closed forms and the link to `p_{2,n}`.
pub fn verify_s_theorem(i: u8, n: u32) -> Result<IdentityReport, FamilyError> {
    precondition(i <= 3 && n >= 1, || format!("need i <= 3, n >= 1 (i={i}, n={n})"))?;
    let cell = format!("i={i},n={n}");
    let mut rep = IdentityReport::new("s-theorem", &cell);
    let idx = s_index(i, n as u64);
    let bs = bi(&idx);
    rep.check(&cell, "congruence (1,2)", solves(&idx, 1, 2), || (bs.pretty(), "1+t+...+t^e (mod 2)".into()));
    rep.check(&cell, "coefficients odd", coefficients_match(&bs, 1, 2), || {
        (bs.pretty(), "1+t+...+t^e (mod 2)".into())
    });
    let three = BigUint::from(3u32);
    rep.check(&cell, "index divisible by 3", idx.value().is_multiple_of(&three), || {
        (idx.to_string(), "0 (mod 3)".into())
    });
    let at_minus_one = bs.eval(&BigInt::from(-1));
    rep.check(&cell, "vanishes at -1", at_minus_one.is_zero(), || (at_minus_one.to_string(), "0".into()));
    if i != 0 {
        return Ok(rep);
    }

    let nn = n as usize;
    let n64 = n as u64;
    let t = IntPolynomial::t();
    let deg = bs.degree().unwrap_or(0);
    rep.check(&cell, "degree 2n+1", deg == 2 * nn + 1, || (deg.to_string(), (2 * nn + 1).to_string()));

    let lemma = &(&b(&(pow2(n64 + 1) - 1u32)) * &b(&(pow2(n64 + 3) - 9u32)))
        + &(&t * &b(&(pow2(n64 + 2) - 5u32)));
    rep.check_eq(&cell, "decomposition", &bs, &lemma);

    let numerator = monomials(&[
        (1, 2 * nn + 3),
        (1, 2 * nn + 2),
        (2, 2 * nn + 1),
        (-2, nn + 2),
        (-4, nn + 1),
        (-2, nn),
        (-2, 3),
        (2, 2),
        (3, 1),
        (1, 0),
    ]);
    let sq = p(&[1, -2, 1]);
    match numerator.divide_exact(&sq) {
        Ok(q) => rep.check_eq(&cell, "rational form", &bs, &q),
        Err(e) => rep.check(&cell, "rational form", false, || (numerator.pretty(), e.to_string())),
    }

    // (B - 1 - t(t^{2n+1}-1)/(t-1)) (t-1)^2 = 2t(t+1)(t^{2n} - t^n - t^{n-1} - t + 2)
    let diff = &(&bs - &IntPolynomial::one()) - &(&t * &g(2 * nn + 1));
    let lhs = &diff * &sq;
    let rhs = &p(&[0, 2, 2]) * &monomials(&[(1, 2 * nn), (-1, nn), (-1, nn - 1), (-1, 1), (2, 0)]);
    rep.check_eq(&cell, "difference form", &lhs, &rhs);
    let two = BigInt::from(2);
    rep.check(&cell, "difference even", diff.coeffs().iter().all(|c| c.is_multiple_of(&two)), || {
        (diff.pretty(), "0 (mod 2)".into())
    });

    if n == 1 {
        rep.check_eq(&cell, "base case", &bs, &p(&[1, 3, 3, 1]));
    } else {
        rep.check_eq(&cell, "explicit expansion", &bs, &s0_explicit(n));
    }
    let link = &(&p(&[1, 1]) * &bi(&p_index(2, n64))) + &(&tp(2) * &g(2 * nn));
    rep.check_eq(&cell, "link to p2", &bs, &link);
    Ok(rep)
}

/// `p_{k,n}` for `2 <= k <= kmax`, `1 <= n <= nmax` are pairwise distinct.
pub fn verify_p_injectivity(kmax: u32, nmax: u32) -> Result<IdentityReport, FamilyError> {
    precondition(kmax >= 2 && nmax >= 1, || "need K >= 2, N >= 1".into())?;
    let params = format!("k=2..{kmax},n=1..{nmax}");
    let mut rep = IdentityReport::new("p-injectivity", &params);
    let mut seen: std::collections::HashMap<BigUint, (u32, u32)> = Default::default();
    for k in 2..=kmax {
        for n in 1..=nmax {
            let v = p_index(k as u64, n as u64).into_inner();
            let cell = format!("k={k},n={n}");
            let clash = seen.get(&v).copied();
            rep.check(&cell, "distinct", clash.is_none(), || {
                let (k2, n2) = clash.unwrap_or_default();
                (v.to_string(), format!("p[{k2},{n2}]"))
            });
            seen.entry(v).or_insert((k, n));
        }
    }
    Ok(rep)
}

/// Number of distinct `p_{k,n}` (`k >= 2`, `n >= 1`) below `2^bits`.
pub fn count_p_below(bits: u32) -> usize {
    let bound = pow2(bits as u64);
    let mut vals = HashSet::new();
    for k in 2..=bits as u64 {
        let mut n = 1;
        loop {
            let v = p_index(k, n).into_inner();
            if v >= bound {
                break;
            }
            vals.insert(v);
            n += 1;
        }
    }
    vals.len()
}

fn fibonacci(n: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Jacobsthal-index polynomials: the three-term recurrence, the even-step
/// recurrence, the binomial closed form, and `s_{alpha_n} = F_n`.
pub fn verify_alpha(n: u32) -> Result<IdentityReport, FamilyError> {
    precondition(n >= 2, || format!("need n >= 2 (n={n})"))?;
    let cell = format!("n={n}");
    let mut rep = IdentityReport::new("alpha", &cell);
    let n64 = n as u64;
    let a = |j: u64| bi(&jacobsthal(j));
    let an = a(n64);
    let rec = &a(n64 - 1) + &(&IntPolynomial::t() * &a(n64 - 2));
    rep.check_eq(&cell, "recurrence", &an, &rec);
    if n.is_multiple_of(2) && n >= 4 {
        let rhs = &(&p(&[1, 2]) * &a(n64 - 2)) - &(&tp(2) * &a(n64 - 4));
        rep.check_eq(&cell, "even recurrence", &an, &rhs);
    }
    let closed = IntPolynomial::from_coeffs(
        (0..=(n64 - 1) / 2).map(|j| binomial(n64 - 1 - j, j)).collect(),
    );
    rep.check_eq(&cell, "binomial form", &an, &closed);
    let s = stern_number(&jacobsthal(n64));
    let f = fibonacci(n64);
    rep.check(&cell, "fibonacci", s == f, || (s.to_string(), f.to_string()));
    Ok(rep)
}

/// `F(X, Y) = t^2 X^2 - t XY + Y^2`; with `printed` the form
/// `(t^2+t+1) X^2 - (t+1) XY + Y^2` instead.
pub(crate) fn f_form(x: &IntPolynomial, y: &IntPolynomial, printed: bool) -> IntPolynomial {
    let (a, b) = if printed {
        (p(&[1, 1, 1]), p(&[1, 1]))
    } else {
        (p(&[0, 0, 1]), p(&[0, 1]))
    };
    &(&(&(&a * x) * x) - &(&(&b * x) * y)) + &(y * y)
}

/// `B_{h_n}` as a quadratic form in `B_{alpha_{2n}}`, `B_{alpha_{2n}+1}`
/// (and in `B_{alpha_{2n}}`, `B_{alpha_{2n+2}}`), and for `n >= 3` the
/// order-3 recurrence with initial values computed directly.
pub fn verify_h_machinery(n: u32) -> Result<IdentityReport, FamilyError> {
    let cell = format!("n={n}");
    let mut rep = IdentityReport::new("h-machinery", &cell);
    let n64 = n as u64;
    let w = |j: u64| bi(&h_index(j));
    let wn = w(n64);
    let a2n = jacobsthal(2 * n64);
    let x = bi(&a2n);
    let y = b(&(a2n.value() + 1u32));
    let y2 = bi(&jacobsthal(2 * n64 + 2));
    let q = p(&[1, 1, 1]);
    let form = &(&(&q * &x) * &x) + &(&(&(&p(&[2, 1]) * &x) * &y) + &(&y * &y));
    rep.check_eq(&cell, "quadratic form", &wn, &form);
    rep.check_eq(&cell, "step", &y2, &(&(&p(&[1, 1]) * &x) + &y));
    rep.check_eq(&cell, "F form", &wn, &f_form(&x, &y2, false));
    if n >= 3 {
        let c = p(&[1, 4, 3]);
        let rhs = &(&(&c * &w(n64 - 1)) - &(&(&tp(2) * &c) * &w(n64 - 2))) + &(&tp(6) * &w(n64 - 3));
        rep.check_eq(&cell, "recurrence", &wn, &rhs);
    }
    Ok(rep)
}

/// `B_{H_n} - 1` is divisible by `t(t+1)` with a quotient divisible by 3.
pub fn verify_theorem3(n: u32) -> Result<IdentityReport, FamilyError> {
    let idx = super::family_index(FamilyId::BigH, n as u64)?;
    let cell = format!("n={n}");
    let mut rep = IdentityReport::new("theorem3", &cell);
    let d = &bi(&idx) - &IntPolynomial::one();
    match d.divide_exact(&p(&[0, 1, 1])) {
        Ok(q) => {
            let three = BigInt::from(3);
            rep.check(&cell, "divisible by t(t+1)", true, || unreachable!());
            rep.check(&cell, "quotient divisible by 3", q.coeffs().iter().all(|c| c.is_multiple_of(&three)), || {
                (q.pretty(), "0 (mod 3)".into())
            });
        }
        Err(e) => rep.check(&cell, "divisible by t(t+1)", false, || (d.pretty(), e.to_string())),
    }
    Ok(rep)
}

/// Closed forms of `B_{2^{n+1}-1}` and `B_{2^{n+2}-3}`, and that they solve
/// the `(1, m)` and `(2, m)` congruences.
pub fn verify_trivial_families(n: u32, m: u32) -> Result<IdentityReport, FamilyError> {
    precondition((2..=crate::poly::MAX_MODULUS).contains(&m), || format!("need 2 <= m <= 65535 (m={m})"))?;
    let cell = format!("n={n},m={m}");
    let mut rep = IdentityReport::new("trivial-families", &cell);
    let nn = n as usize;
    let ones = SternIndex::from(pow2(n as u64 + 1) - 1u32);
    rep.check_eq(&cell, "all ones", &bi(&ones), &g(nn + 1));
    rep.check(&cell, "all ones solves (1,m)", solves(&ones, 1, m), || (ones.to_string(), format!("(1,{m})")));
    if n >= 1 {
        let twos = SternIndex::from(pow2(n as u64 + 2) - 3u32);
        let want = &IntPolynomial::one() + &(&IntPolynomial::constant(2) * &(&IntPolynomial::t() * &g(nn)));
        rep.check_eq(&cell, "twos", &bi(&twos), &want);
        if m >= 3 {
            rep.check(&cell, "twos solves (2,m)", solves(&twos, 2, m), || (twos.to_string(), format!("(2,{m})")));
        }
    }
    Ok(rep)
}

/// The maximum of `s_j` over `0 <= j <= 2^{n-1}` is attained at `alpha_n`
/// and at `beta_n`.
pub fn verify_beta_max(n: u32) -> Result<IdentityReport, FamilyError> {
    precondition((2..=26).contains(&n), || format!("need 2 <= n <= 26 (n={n})"))?;
    let cell = format!("n={n}");
    let mut rep = IdentityReport::new("beta-max", &cell);
    let top = 1usize << (n - 1);
    let mut s = vec![0u64; top + 2];
    s[1] = 1;
    for j in 2..=top {
        s[j] = if j % 2 == 0 { s[j / 2] } else { s[j / 2] + s[j / 2 + 1] };
    }
    let max = *s[..=top].iter().max().expect("nonempty");
    let alpha = jacobsthal(n as u64).to_u64().expect("small") as usize;
    let beta = super::family_index_u64(FamilyId::Beta, n as u64).expect("small") as usize;
    rep.check(&cell, "alpha attains max", s[alpha] == max, || (s[alpha].to_string(), max.to_string()));
    rep.check(&cell, "beta attains max", beta <= top && s[beta] == max, || (s[beta.min(top)].to_string(), max.to_string()));
    Ok(rep)
}

/// Identities that can be run by name over a [`Grid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    Lemma1,
    Lemma2,
    Dkt,
    PTheorem,
    VExplicit,
    VRecurrence,
    CMachinery,
    STheorem,
    PInjectivity,
    Alpha,
    HMachinery,
    Theorem3,
    TrivialFamilies,
    BetaMax,
}

impl Identity {
    pub const ALL: [Identity; 14] = [
        Identity::Lemma1,
        Identity::Lemma2,
        Identity::Dkt,
        Identity::PTheorem,
        Identity::VExplicit,
        Identity::VRecurrence,
        Identity::CMachinery,
        Identity::STheorem,
        Identity::PInjectivity,
        Identity::Alpha,
        Identity::HMachinery,
        Identity::Theorem3,
        Identity::TrivialFamilies,
        Identity::BetaMax,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Lemma1 => "lemma1",
            Identity::Lemma2 => "lemma2",
            Identity::Dkt => "dkt",
            Identity::PTheorem => "p-theorem",
            Identity::VExplicit => "v-explicit",
            Identity::VRecurrence => "v-recurrence",
            Identity::CMachinery => "c-machinery",
            Identity::STheorem => "s-theorem",
            Identity::PInjectivity => "p-injectivity",
            Identity::Alpha => "alpha",
            Identity::HMachinery => "h-machinery",
            Identity::Theorem3 => "theorem3",
            Identity::TrivialFamilies => "trivial-families",
            Identity::BetaMax => "beta-max",
        }
    }

    /// Parameter names and default ranges.
    pub fn defaults(self) -> Vec<(&'static str, std::ops::RangeInclusive<u64>)> {
        match self {
            Identity::Lemma1 => vec![("a", 0..=8), ("m", 0..=64)],
            Identity::Lemma2 => vec![("n", 1..=30)],
            Identity::Dkt => vec![("k", 1..=1023), ("extra", 8..=8)],
            Identity::PTheorem => vec![("k", 2..=10), ("n", 1..=40)],
            Identity::VExplicit => vec![("k", 2..=3), ("n", 1..=30)],
            Identity::VRecurrence => vec![("k", 3..=8), ("n", 1..=20)],
            Identity::CMachinery => vec![("k", 4..=8), ("n", 3..=20)],
            Identity::STheorem => vec![("i", 0..=3), ("n", 1..=40)],
            Identity::PInjectivity => vec![("k", 20..=20), ("n", 20..=20)],
            Identity::Alpha => vec![("n", 2..=60)],
            Identity::HMachinery => vec![("n", 0..=12)],
            Identity::Theorem3 => vec![("n", 0..=2)],
            Identity::TrivialFamilies => vec![("n", 0..=30), ("m", 2..=10)],
            Identity::BetaMax => vec![("n", 2..=20)],
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| FamilyError::UnknownIdentity(s.to_string()))
    }
}

fn pairs(g: &Grid, a: &str, b: &str) -> Vec<(u32, u32)> {
    let ra = g.get(a).expect("defaulted");
    let rb = g.get(b).expect("defaulted");
    ra.flat_map(|x| rb.clone().map(move |y| (x as u32, y as u32))).collect()
}

fn singles(g: &Grid, a: &str) -> Vec<u32> {
    g.get(a).expect("defaulted").map(|x| x as u32).collect()
}

/// Run an identity over `grid`, filling unspecified ranges with defaults.
///
/// `p-injectivity` reads the upper ends of `k` and `n` as `K` and `N`;
/// `dkt` checks odd `k` in range with `extra` values of `n` above the minimum.
pub fn run_identity(id: Identity, grid: &Grid) -> Result<IdentityReport, FamilyError> {
    let known: Vec<&str> = id.defaults().iter().map(|(n, _)| *n).collect();
    if let Some(bad) = grid.names().find(|n| !known.contains(n)) {
        return Err(FamilyError::PreconditionViolated(format!(
            "{id} takes parameters {known:?}, got {bad:?}"
        )));
    }
    let g = grid.or_defaults(&id.defaults());
    let name = id.name();
    let params = g.to_string();
    match id {
        Identity::Lemma1 => {
            let mut r = lemma1_sweep(g.get("a").unwrap(), g.get("m").unwrap())?;
            r.params = params;
            Ok(r)
        }
        Identity::Lemma2 => sweep(name, params, singles(&g, "n"), |&n| verify_lemma2(n)),
        Identity::Dkt => {
            let extra = *g.get("extra").unwrap().end() as u32;
            let mut r = dkt_sweep(g.get("k").unwrap(), extra)?;
            r.params = params;
            Ok(r)
        }
        Identity::PTheorem => sweep(name, params, pairs(&g, "k", "n"), |&(k, n)| verify_p_theorem(k, n)),
        Identity::VExplicit => sweep(name, params, pairs(&g, "k", "n"), |&(k, n)| verify_v_explicit(k, n)),
        Identity::VRecurrence => sweep(name, params, pairs(&g, "k", "n"), |&(k, n)| verify_v_recurrence(k, n)),
        Identity::CMachinery => sweep(name, params, pairs(&g, "k", "n"), |&(k, n)| verify_c_machinery(k, n)),
        Identity::STheorem => sweep(name, params, pairs(&g, "i", "n"), |&(i, n)| verify_s_theorem(i as u8, n)),
        Identity::PInjectivity => {
            let mut r = verify_p_injectivity(*g.get("k").unwrap().end() as u32, *g.get("n").unwrap().end() as u32)?;
            r.params = params;
            Ok(r)
        }
        Identity::Alpha => sweep(name, params, singles(&g, "n"), |&n| verify_alpha(n)),
        Identity::HMachinery => sweep(name, params, singles(&g, "n"), |&n| verify_h_machinery(n)),
        Identity::Theorem3 => sweep(name, params, singles(&g, "n"), |&n| verify_theorem3(n)),
        Identity::TrivialFamilies => sweep(name, params, pairs(&g, "n", "m"), |&(n, m)| verify_trivial_families(n, m)),
        Identity::BetaMax => sweep(name, params, singles(&g, "n"), |&n| verify_beta_max(n)),
    }
}
