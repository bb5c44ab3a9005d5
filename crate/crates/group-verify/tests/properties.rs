use lg_groups::structures::{embed, is_unitary, j_mat, random_unitary, Embedding};
use lg_groups::{Alg, Mat, Subgroup, SubgroupKind};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn alg_of(split: bool) -> Alg {
    if split {
        Alg::Split
    } else {
        Alg::field2()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn antidiagonal_squares_to_one(k in 1usize..9, split: bool) {
        let alg = alg_of(split);
        let j = j_mat(alg, k).unwrap();
        prop_assert_eq!(j.mul(&j), Mat::identity(alg, k));
    }

    #[test]
    fn lower_embedding_is_multiplicative(seed: u64, split: bool, r in 1usize..3, extra in 0usize..2) {
        let alg = alg_of(split);
        let n = r + extra;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_unitary(alg, 2 * r, &mut rng);
        let h = random_unitary(alg, 2 * r, &mut rng);
        let jg = embed(Embedding::Lower, n, r, &g).unwrap();
        let jh = embed(Embedding::Lower, n, r, &h).unwrap();
        prop_assert!(is_unitary(&jg));
        prop_assert_eq!(embed(Embedding::Lower, n, r, &g.mul(&h)).unwrap(), jg.mul(&jh));
    }

    #[test]
    fn upper_embedding_is_multiplicative(seed: u64, split: bool, n in 0usize..2, gap in 1usize..3) {
        let alg = alg_of(split);
        let r = n + gap;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_unitary(alg, 2 * n + 1, &mut rng);
        let h = random_unitary(alg, 2 * n + 1, &mut rng);
        let jg = embed(Embedding::Upper, n, r, &g).unwrap();
        prop_assert!(is_unitary(&jg));
        prop_assert_eq!(embed(Embedding::Upper, n, r, &g.mul(&h)).unwrap(), jg.mul(&embed(Embedding::Upper, n, r, &h).unwrap()));
    }

    #[test]
    fn patterns_are_closed_under_inverse(seed: u64, split: bool) {
        let alg = alg_of(split);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (kind, n, r) in [(SubgroupKind::XbarUpper, 1, 3), (SubgroupKind::YUpper, 0, 3), (SubgroupKind::YLower, 3, 1), (SubgroupKind::XbarLower, 2, 1)] {
            let s = Subgroup::new(kind, n, r).unwrap();
            let g = s.random_unitary(alg, &mut rng);
            prop_assert!(s.contains_unitary(&g.inverse().unwrap()));
        }
    }
}
