//! Family identities on random parameters, family membership of solutions,
//! and report serialization.

use proptest::prelude::*;

use stern_core::conjecture::{run_conjecture, ConjectureId};
use stern_core::families::{
    errata, family_index, family_index_u64, run_identity, verify_lemma1, verify_p_theorem,
    FamilyError, FamilyId, Identity,
};
use stern_core::grid::Grid;
use stern_core::search::{is_solution, mine_affine_families, AffineTriple, CongruenceSpec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lemma1_random(a in 0u32..24, m in 0u64..1 << 30, frac in 0.0f64..=1.0) {
        let r = ((1u64 << a) as f64 * frac) as u64;
        let rep = verify_lemma1(a, m, r).unwrap();
        prop_assert!(rep.pass, "{:?}", rep);
    }

    #[test]
    fn p_family_solves_two_congruences(k in 2u32..12, n in 1u32..30) {
        let rep = verify_p_theorem(k, n).unwrap();
        prop_assert!(rep.pass, "{:?}", rep);
    }

    #[test]
    fn s_family_solves_one_two(i in 0u8..=3, n in 1u64..60) {
        let idx = family_index(FamilyId::S(i), n).unwrap();
        prop_assert!(is_solution(&idx, &CongruenceSpec::new(1, 2).unwrap()).unwrap());
    }

    #[test]
    fn family_ids_round_trip(k in 2u32..100, i in 0u8..=3) {
        for f in [FamilyId::P(k), FamilyId::S(i), FamilyId::H, FamilyId::Alpha, FamilyId::TrivialTwos] {
            prop_assert_eq!(f.to_string().parse::<FamilyId>().unwrap(), f);
            let json = serde_json::to_string(&f).unwrap();
            prop_assert_eq!(serde_json::from_str::<FamilyId>(&json).unwrap(), f);
        }
    }

    #[test]
    fn membership_agrees_with_closed_form(k in 2u32..6, n in 1u64..12) {
        let v = family_index_u64(FamilyId::P(k), n).unwrap();
        prop_assert!(FamilyId::P(k).contains_u64(v));
        prop_assert!(!FamilyId::P(k).contains_u64(v + 2));
    }
}

#[test]
fn domain_errors() {
    assert!(matches!(family_index(FamilyId::P(5), 0), Err(FamilyError::OutOfDomain { .. })));
    assert!(matches!(family_index(FamilyId::Alpha, 1), Err(FamilyError::OutOfDomain { .. })));
    assert!("p1".parse::<FamilyId>().is_err());
    assert!("s4".parse::<FamilyId>().is_err());
    assert!(run_identity(Identity::Lemma2, &"k=1".parse::<Grid>().unwrap()).is_err());
}

#[test]
fn every_identity_passes_on_a_small_grid() {
    for id in Identity::ALL {
        let grid: Grid = match id {
            Identity::Lemma1 => "a=0..4,m=0..16".parse().unwrap(),
            Identity::Dkt => "k=1..63".parse().unwrap(),
            Identity::PInjectivity => "k=8,n=8".parse().unwrap(),
            Identity::Theorem3 => "n=0..1".parse().unwrap(),
            _ => Grid::new(),
        };
        let rep = run_identity(id, &grid).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.checked > 0, "{id}");
    }
}

#[test]
fn errata_are_flagged_not_fixed() {
    let list = errata();
    assert!(list.iter().all(|e| e.confirmed && e.printed != e.computed));
    let json = serde_json::to_string(&list).unwrap();
    assert!(json.contains("sporadic-205"));
}

#[test]
fn conjecture_reports_serialize() {
    for id in ConjectureId::ALL {
        let grid: Grid = match id {
            ConjectureId::MinusOne => "n=1..500".parse().unwrap(),
            ConjectureId::C3 => "n=0..3".parse().unwrap(),
            ConjectureId::C1_1 | ConjectureId::C1_2 | ConjectureId::C1_3 => "k=2..5,n=1..6".parse().unwrap(),
            _ => "n=1..5".parse().unwrap(),
        };
        let rep = run_conjecture(id, &grid).unwrap();
        assert!(!rep.cells.is_empty() || id == ConjectureId::MinusOne, "{id}");
        let v: serde_json::Value = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["id"], id.name());
    }
}

#[test]
fn mined_triples_serialize_as_fractions() {
    let t = AffineTriple::fit([5, 29, 253, 1405]).unwrap();
    let v = serde_json::to_value(&t).unwrap();
    assert_eq!(v["p"], "88/3");
    assert_eq!(v["u"], "119/3");
    assert!(AffineTriple::fit([5, 29, 253, 1406]).is_none());
    let spec = CongruenceSpec::new(0, 2).unwrap();
    assert!(mine_affine_families(&[1, 3, 5], 4, &spec).is_err());
}
