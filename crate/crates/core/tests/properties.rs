mod common;

use common::*;
use entwb_core::bipartition::Bipartition;
use entwb_core::criteria::{ppt_test, PptVerdict};
use entwb_core::distill::{pt_expectation, rank2_min, SchmidtRank2Vector, SearchBudget};
use entwb_core::io::{state_from_json, state_to_json};
use entwb_core::tensor::{subspace_residual, vector, DenseMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dims_strategy() -> impl Strategy<Value = [usize; 3]> {
    [1usize..=4, 1usize..=4, 1usize..=4]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn partial_transpose_involution_trace_diagonal(dims in dims_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_state(&mut rng, dims);
        prop_assert_eq!(check_pt(&s), Ok(()));
    }

    #[test]
    fn schmidt_rank_bound_and_local_unitary_invariance(dl in 1usize..=6, dr in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(check_schmidt(&mut rng, dl, dr), Ok(()));
    }

    #[test]
    fn relation_implications(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, s, at) = random_relation_set(&mut rng);
        prop_assert_eq!(check_relations(n, &s, &at), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn inertia_congruence_invariance(d in 1usize..=12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(check_inertia_congruence(&mut rng, d), Ok(()));
    }

    #[test]
    fn product_vectors_have_nonnegative_pt_expectation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_state(&mut rng, [2, 2, 3]);
        for split in Bipartition::standard(s.dims()) {
            let l = vector::normalized(&random_vector(&mut rng, split.left_dim())).unwrap();
            let r = vector::normalized(&random_vector(&mut rng, split.right_dim())).unwrap();
            let psi = SchmidtRank2Vector::from_bipartite(&split, &vector::kron(&l, &r)).unwrap();
            prop_assert!(pt_expectation(&s, &split, &psi).unwrap() >= -1e-12);
        }
    }

    #[test]
    fn negative_rank2_value_implies_npt(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_state(&mut rng, [2, 2, 2]);
        let budget = SearchBudget { restarts: 8, iters: 50, seed };
        for split in Bipartition::standard(s.dims()) {
            let r = rank2_min(&s, &split, &budget).unwrap();
            let ppt = ppt_test(&s, &split, 1e-12).unwrap();
            if r.value < -1e-12 {
                prop_assert_eq!(ppt.verdict, PptVerdict::Npt);
            }
            prop_assert!(r.value >= ppt.lambda_min - 1e-10);
        }
    }

    #[test]
    fn subspace_residual_is_basis_independent(seed in any::<u64>(), d in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = d / 2;
        let u = random_unitary(&mut rng, d);
        let basis = DenseMatrix::from_fn(d, k, |i, j| u.get(i, j));
        let w = random_unitary(&mut rng, k);
        let rotated = basis.matmul(&w);
        let v = random_vector(&mut rng, d);
        let a = subspace_residual(&v, &basis).unwrap();
        let b = subspace_residual(&v, &rotated).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn state_json_round_trip_is_exact(dims in dims_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_state(&mut rng, dims);
        let back = state_from_json(&state_to_json(&s)).unwrap();
        prop_assert_eq!(back.rho().max_abs_diff(s.rho()), 0.0);
    }
}
