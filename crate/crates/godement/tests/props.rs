use lg_chars::AddChar;
use lg_godement::symplectic_fourier;
use lg_padic::PAdicField;
use lg_tate::SchwartzFn;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn symplectic_transform_is_an_involution(
        p in prop::sample::select(vec![3u64, 5, 7]),
        c0 in 0i64..49, c1 in 0i64..49,
        l0 in -1i32..3, l1 in -1i32..3,
        cond in -1i32..2,
        seed in any::<u64>(),
    ) {
        let f = PAdicField::new(p, 12).unwrap();
        let psi = AddChar::with_conductor(f, cond);
        let phi = SchwartzFn::indicator(f, vec![f.from_i64(c0), f.from_i64(c1)], vec![l0, l1]).unwrap()
            .add(&SchwartzFn::unit_box(f, 2).scale(Complex64::new(0.0, 0.5))).unwrap();
        let back = symplectic_fourier(&symplectic_fourier(&phi, &psi).unwrap(), &psi).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let x = phi.random_point(&mut rng, -2, 4);
            prop_assert!((back.eval(&x).unwrap() - phi.eval(&x).unwrap()).norm() < 1e-9);
        }
    }
}
