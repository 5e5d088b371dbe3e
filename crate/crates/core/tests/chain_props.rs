use proptest::prelude::*;

use spinorial::chain::{self, ChainKind};
use spinorial::clifford::build_gammas;
use spinorial::fixtures;
use spinorial::rmatrix::{fundamental_r, Chirality};
use spinorial::scalar::GaussianRational as GR;

#[test]
fn one_site_vector_chain_is_the_fundamental_r() {
    for d in 3..=5 {
        let m = chain::vector_monodromy(d, 1).unwrap();
        assert_eq!(m.matrix, fundamental_r(1, d).unwrap().matrix, "d={d}");
    }
}

#[test]
fn guards_reject_oversized_chains() {
    let rep = build_gammas(4).unwrap();
    assert!(chain::spinor_monodromy(&rep, 0, ChainKind::LChain).is_err());
    assert!(chain::spinor_monodromy(&rep, 9, ChainKind::LChain).is_err());
    assert!(chain::vector_monodromy(8, 1).is_err());
}

#[test]
fn transfer_is_invariant_under_aux_similarity() {
    let rep = build_gammas(4).unwrap();
    let m = chain::spinor_monodromy(&rep, 2, ChainKind::RChain(Chirality::Minus)).unwrap();
    let v = fixtures::similarity("so4_similarity").unwrap();
    let t = chain::transfer(&m).unwrap();
    let tv = chain::transfer(&m.conjugate_aux(&v).unwrap()).unwrap();
    assert_eq!(t.t, tv.t);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn transfer_matrices_commute_at_random_points(u in -6i64..=6, v in -6i64..=6, n in 1usize..=2) {
        let rep = build_gammas(3).unwrap();
        let t = chain::transfer(&chain::spinor_monodromy(&rep, n, ChainKind::LChain).unwrap()).unwrap();
        let a = t.t.eval(&GR::from_int(u), None).unwrap();
        let b = t.t.eval(&GR::from_int(v), None).unwrap();
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }
}
