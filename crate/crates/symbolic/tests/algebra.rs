use lg_symbolic::{lr_equal, Complex64, LaurentPoly, LaurentRational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_small(rng: &mut ChaCha8Rng, q: u64) -> LaurentRational {
    let mut terms = |n: usize, lo: i32| -> LaurentPoly {
        let t: Vec<(i32, Complex64)> = (0..n)
            .map(|i| (lo + i as i32, Complex64::new(rng.gen_range(-3..=3) as f64, rng.gen_range(-2..=2) as f64)))
            .collect();
        LaurentPoly::from_terms(&t)
    };
    let num = terms(3, -1);
    let mut den = terms(2, 0);
    if den.is_zero() {
        den = LaurentPoly::constant(Complex64::new(1.0, 0.0));
    }
    LaurentRational::new(q, num, den).unwrap_or_else(|_| LaurentRational::one(q))
}

#[test]
fn product_then_quotient_recovers_factor() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..100 {
        let a = random_small(&mut rng, 5);
        let b = random_small(&mut rng, 5);
        if b.is_zero() {
            continue;
        }
        let back = a.mul(&b).unwrap().div(&b).unwrap();
        assert!(lr_equal(&back, &a, 1e-9), "{a} vs {back}");
    }
}

#[test]
fn evaluation_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let a = random_small(&mut rng, 3);
        let b = random_small(&mut rng, 3);
        let r = rng.gen_range(0.1..0.5);
        let t = rng.gen_range(0.0..std::f64::consts::TAU);
        let x = Complex64::from_polar(r, t);
        let rel = |u: Complex64, v: Complex64| (u - v).norm() / (1.0 + v.norm());
        assert!(rel(a.add(&b).unwrap().eval(x), a.eval(x) + b.eval(x)) < 1e-9);
        assert!(rel(a.mul(&b).unwrap().eval(x), a.eval(x) * b.eval(x)) < 1e-9);
        if !b.is_zero() && b.eval(x).norm() > 1e-6 {
            assert!(rel(a.div(&b).unwrap().eval(x), a.eval(x) / b.eval(x)) < 1e-8);
        }
    }
}

#[test]
fn geometric_series_matches_partial_sums() {
    let q = 3;
    let g = LaurentRational::geometric(q, Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.5), 2).unwrap();
    let x = Complex64::new(0.3, 0.0);
    let partial: Complex64 = (0..200).map(|k| 2.0 * (Complex64::new(0.5, 0.5) * x * x).powi(k)).sum();
    assert!((g.eval(x) - partial).norm() < 1e-12);
}

proptest! {
    #[test]
    fn equality_is_reflexive_and_symmetric(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_small(&mut rng, 7);
        let b = a.scale(Complex64::new(1.0 + 1e-11, 0.0));
        prop_assert!(lr_equal(&a, &a, 1e-9));
        prop_assert_eq!(lr_equal(&a, &b, 1e-9), lr_equal(&b, &a, 1e-9));
    }

    #[test]
    fn reflection_is_an_involution(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_small(&mut rng, 5);
        let back = a.reflect().unwrap().reflect().unwrap();
        prop_assert!(lr_equal(&a, &back, 1e-9));
    }
}
