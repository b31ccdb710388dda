//! Ring laws, reduction and root counting on random integer polynomials.

use num_bigint::BigInt;
use proptest::prelude::*;

use stern_core::poly::{count_real_roots, is_increasing, reduce_mod, squarefree_decomposition, IntPolynomial};

fn poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-50i64..=50, 0..8).prop_map(|c| IntPolynomial::from_i64s(&c))
}

fn nonzero_poly() -> impl Strategy<Value = IntPolynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &IntPolynomial::one(), a.clone());
    }

    #[test]
    fn degree_and_eval(a in nonzero_poly(), b in nonzero_poly(), x in -20i64..=20) {
        prop_assert_eq!((&a * &b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        let x = BigInt::from(x);
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
    }

    #[test]
    fn exact_division_round_trips(a in poly(), b in nonzero_poly()) {
        let q = (&a * &b).divide_exact(&b).unwrap();
        prop_assert_eq!(q, a);
    }

    #[test]
    fn reduction_is_a_ring_homomorphism(a in poly(), b in poly(), m in 2u32..=40) {
        let fd = 16;
        let ra = reduce_mod(&a, m, fd).unwrap();
        let rb = reduce_mod(&b, m, fd).unwrap();
        prop_assert!(reduce_mod(&(&a + &b), m, fd).unwrap().congruent(&ra.add(&rb)));
        prop_assert!(reduce_mod(&(&a * &b), m, fd).unwrap().congruent(&ra.mul(&rb)));
    }

    #[test]
    fn sturm_counts_distinct_integer_roots(
        roots in prop::collection::btree_set(-12i64..=12, 0..6),
        repeat in 1usize..=3,
        lead in 1i64..=5,
    ) {
        // lead * prod (t - a)^repeat, times a factor without real roots
        let mut p = IntPolynomial::from_i64s(&[lead]);
        for &a in &roots {
            for _ in 0..repeat {
                p = &p * &IntPolynomial::from_i64s(&[-a, 1]);
            }
        }
        p = &p * &IntPolynomial::from_i64s(&[1, 0, 1]);
        prop_assert_eq!(count_real_roots(&p).unwrap(), roots.len());
    }

    #[test]
    fn squarefree_parts_multiply_back(roots in prop::collection::vec(-6i64..=6, 1..6)) {
        let p = roots
            .iter()
            .fold(IntPolynomial::one(), |acc, &a| &acc * &IntPolynomial::from_i64s(&[-a, 1]));
        let parts = squarefree_decomposition(&p).unwrap();
        let back = parts.iter().enumerate().fold(IntPolynomial::one(), |acc, (i, f)| {
            (0..=i).fold(acc, |acc, _| &acc * f)
        });
        prop_assert_eq!(back.degree(), p.degree());
        prop_assert!(p.divide_exact(&back).is_ok());
    }

    #[test]
    fn odd_powers_are_increasing(a in -5i64..=5, k in 0usize..4) {
        // (t - a)^(2k+1) is increasing though its derivative has a root
        let lin = IntPolynomial::from_i64s(&[-a, 1]);
        let p = (0..2 * k + 1).fold(IntPolynomial::one(), |acc, _| &acc * &lin);
        prop_assert!(is_increasing(&p));
        prop_assert!(!is_increasing(&(-&p)));
    }
}

#[test]
fn coefficient_list_round_trip() {
    let p: IntPolynomial = "1,2,2".parse().unwrap();
    assert_eq!(p.pretty(), "2t^2+2t+1");
    assert_eq!(p.to_csv_string().parse::<IntPolynomial>().unwrap(), p);
    assert!("1,x".parse::<IntPolynomial>().is_err());
}
