use lg_chars::{Base, MultChar};
use lg_padic::{EtaleAlgebra, PAdicField};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn powers_and_inverses_compose(seed in any::<u64>(), pi in 0usize..3, kind in 0usize..3, n in -5i64..6) {
        let p = [3u64, 5, 7][pi];
        let f = PAdicField::new(p, 12).unwrap();
        let base = match kind {
            0 => Base::F(f),
            1 => Base::E(EtaleAlgebra::unramified(f)),
            _ => Base::E(EtaleAlgebra::ramified(f)),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chi = MultChar::random(base, 2, 4, &mut rng).unwrap();
        let prod = chi.pow(n).mul(&chi.pow(-n)).unwrap();
        prop_assert!(prod.approx_eq(&MultChar::trivial(base).unwrap(), 1e-9));
        prop_assert!(chi.inv().inv().approx_eq(&chi, 1e-9));
        prop_assert!(chi.depth() <= 2);
    }
}
