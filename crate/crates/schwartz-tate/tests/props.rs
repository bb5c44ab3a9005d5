use lg_chars::{Base, MultChar};
use lg_padic::PAdicField;
use lg_symbolic::lr_equal;
use lg_tate::{tate_integral, Domain, SchwartzFn};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tate_integral_is_linear(seed in 0u64..10_000, a in -2.0f64..2.0, c1 in -2i64..9, c2 in -2i64..9, l1 in 0i32..3, l2 in -1i32..3) {
        let f = PAdicField::new(3, 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chi = MultChar::random(Base::F(f), 2, 4, &mut rng).unwrap();
        let dom = Domain::F(f);
        let p1 = SchwartzFn::indicator(f, vec![f.from_i64(c1)], vec![l1]).unwrap();
        let p2 = SchwartzFn::indicator(f, vec![f.from_i64(c2)], vec![l2]).unwrap();
        let w = Complex64::new(a, 0.5);
        let lhs = tate_integral(&dom, &p1.add(&p2.scale(w)).unwrap(), &chi, 1.0).unwrap();
        let rhs = tate_integral(&dom, &p1, &chi, 1.0).unwrap()
            .add(&tate_integral(&dom, &p2, &chi, 1.0).unwrap().scale(w)).unwrap();
        prop_assert!(lr_equal(&lhs, &rhs, 1e-9));
    }
}
