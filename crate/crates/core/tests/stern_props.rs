//! Stern polynomials against their defining recurrence and independent
//! oracles.

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use stern_core::poly::{reduce_mod, IntPolynomial};
use stern_core::search::{is_solution, is_solution_u64, CongruenceSpec};
use stern_core::stern::{
    hyperbinary_poly, stern_degree, stern_number, stern_pair, stern_poly, stern_poly_u64,
};
use stern_core::SternIndex;

/// `B_0..B_n` straight from the recurrence.
fn table(n: usize) -> Vec<IntPolynomial> {
    let mut b = vec![IntPolynomial::zero(), IntPolynomial::one()];
    for j in 2..=n {
        let next = if j % 2 == 0 { b[j / 2].shift(1) } else { &b[j / 2] + &b[j / 2 + 1] };
        b.push(next);
    }
    b
}

#[test]
fn matches_recurrence_table() {
    let b = table(1 << 12);
    for (n, p) in b.iter().enumerate() {
        assert_eq!(&stern_poly_u64(n as u64), p, "n={n}");
    }
}

#[test]
fn small_values() {
    let p = IntPolynomial::from_i64s;
    assert_eq!(stern_poly_u64(5), p(&[1, 2]));
    assert_eq!(stern_poly_u64(7), p(&[1, 1, 1]));
    assert_eq!(stern_poly_u64(85), p(&[1, 6, 10, 4]));
}

fn big_index() -> impl Strategy<Value = SternIndex> {
    prop::collection::vec(any::<u32>(), 1..5)
        .prop_map(|d| SternIndex::from(BigUint::new(d)))
}

proptest! {
    #[test]
    fn recurrence_holds_for_large_indices(n in big_index()) {
        let v = n.value();
        let even = SternIndex::from(v * 2u32);
        let odd = SternIndex::from(v * 2u32 + 1u32);
        let next = SternIndex::from(v + 1u32);
        prop_assert_eq!(stern_poly(&even), stern_poly(&n).shift(1));
        prop_assert_eq!(stern_poly(&odd), &stern_poly(&n) + &stern_poly(&next));
        let pair = stern_pair(&n);
        prop_assert_eq!(pair.hi, stern_poly(&next));
    }

    #[test]
    fn values_at_one_and_two(n in big_index()) {
        let b = stern_poly(&n);
        prop_assert_eq!(b.eval(&BigInt::from(2)), n.to_bigint());
        prop_assert_eq!(b.eval(&BigInt::from(1)), BigInt::from(stern_number(&n)));
    }

    #[test]
    fn degree_recursion_agrees(n in big_index()) {
        prop_assume!(!n.is_zero());
        let deg = stern_degree(&n).unwrap();
        prop_assert_eq!(Some(deg as usize), stern_poly(&n).degree());
    }

    #[test]
    fn hyperbinary_oracle(n in 1u64..200_000) {
        prop_assert_eq!(stern_poly_u64(n), hyperbinary_poly(&SternIndex::new(n - 1)));
    }

    #[test]
    fn coefficients_are_nonnegative_with_unit_constant(n in big_index()) {
        prop_assume!(n.is_odd());
        let b = stern_poly(&n);
        prop_assert!(b.coeffs().iter().all(|c| c >= &BigInt::from(0)));
        prop_assert_eq!(b.coeff(0), BigInt::from(1));
    }

    #[test]
    fn modular_decision_matches_exact(n in 0u64..1 << 40, r in 0u32..7, m in 2u32..=7) {
        prop_assume!(r < m);
        let n = 2 * n + 1;
        let spec = CongruenceSpec::new(r, m).unwrap();
        let b = stern_poly_u64(n);
        let e = b.degree().unwrap();
        let mut target = vec![0u64; e + 1];
        target[0] = 1;
        for c in target.iter_mut().skip(1) {
            *c = u64::from(r);
        }
        let expected = reduce_mod(&b, m, e).unwrap().coeffs().iter().map(|&c| u64::from(c)).eq(
            target.iter().map(|&c| c % u64::from(m)),
        );
        prop_assert_eq!(is_solution(&SternIndex::new(n), &spec).unwrap(), expected);
        prop_assert_eq!(is_solution_u64(n, &spec).unwrap(), expected);
    }
}
