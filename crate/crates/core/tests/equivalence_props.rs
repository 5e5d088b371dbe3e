use proptest::prelude::*;

use spinorial::clifford::build_gammas;
use spinorial::equivalence::{self as eq, KronFactor, Reparam, SignedPermutation};
use spinorial::invariants::SpinorPairSpace;
use spinorial::matrix::{ConstMatrix, SparsePolyMatrix};
use spinorial::rmatrix::{spinor_parts, Chirality};
use spinorial::scalar::{rat, GaussianRational as GR};

fn so4_minus() -> SparsePolyMatrix {
    let parts = spinor_parts(&SpinorPairSpace::new(&build_gammas(4).unwrap())).unwrap();
    parts.into_iter().find(|p| p.chirality == Chirality::Minus).unwrap().unchecked.matrix
}

fn monomial() -> impl Strategy<Value = SignedPermutation> {
    (Just((0..4).collect::<Vec<usize>>()).prop_shuffle(), prop::collection::vec(0u8..4, 4)).prop_map(|(perm, phase)| SignedPermutation { perm, phase })
}

fn small_matrix(n: usize) -> impl Strategy<Value = ConstMatrix> {
    prop::collection::vec((-3i64..=3, -2i64..=2), n * n)
        .prop_map(move |v| ConstMatrix::from_triplets(n, n, v.into_iter().enumerate().map(|(k, (a, b))| (k / n, k % n, GR::new(rat(a, 1), rat(b, 1))))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn basis_search_undoes_a_monomial_change(s in monomial()) {
        let r = so4_minus();
        let g = s.matrix().kron(&s.matrix());
        let table = g.to_poly().mul(&r).mul(&g.inverse().unwrap().to_poly());
        let found = eq::table_basis_match(&r, &table, 4).unwrap();
        prop_assert!(found.is_some());
        prop_assert!(eq::verify_basis_match(&r, &table, &found.unwrap()).unwrap());
    }

    #[test]
    fn monomial_change_is_an_intertwiner(s in monomial()) {
        let r = so4_minus();
        let g = s.matrix().kron(&s.matrix());
        let conj = g.to_poly().mul(&r).mul(&g.inverse().unwrap().to_poly());
        let space = eq::intertwiner_space(&r, &conj, &Reparam::identity(), &eq::default_samples(&r, &conj)).unwrap();
        prop_assert!(space.holds(&r, &conj, &g));
    }

    #[test]
    fn kron_square_roundtrip(g in small_matrix(3)) {
        prop_assume!(!g.is_zero());
        let full = g.kron(&g);
        match eq::kron_factorize(&full, 3) {
            Some(KronFactor::Square(h)) => prop_assert_eq!(h.kron(&h), full),
            other => prop_assert!(false, "expected a square factor, got {:?}", other),
        }
    }

    #[test]
    fn kron_rejects_sums(g in small_matrix(2), h in small_matrix(2)) {
        let full = g.kron(&g).add(&h.kron(&ConstMatrix::identity(2)));
        if let Some(f) = eq::kron_factorize(&full, 2) {
            let rebuilt = match f {
                KronFactor::Square(a) => a.kron(&a),
                KronFactor::Pair(a, b) => a.kron(&b),
            };
            prop_assert_eq!(rebuilt, full);
        }
    }

    #[test]
    fn reparam_evaluates_at_the_affine_point(a in -4i64..=4, c in -4i64..=4, x in -5i64..=5) {
        prop_assume!(a != 0);
        let sl = eq::sl_fundamental(2);
        let re = Reparam { alpha: rat(a, 1), gamma0: rat(c, 1) };
        let lhs = re.apply(&sl).eval(&GR::from_int(x), None).unwrap();
        let rhs = sl.eval(&GR::from_int(a * x + c), None).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn block_patterns_match_partitions() {
    let r = so4_minus();
    let p = eq::rtt_pattern(&r, 4).unwrap();
    assert_eq!(p.allowed(), eq::partition_pattern(&[vec![0, 3], vec![1, 2]]));
}
