use lg_chars::{omega_char, omega_ef, AddChar, AddCharE, Base, CharError, EtaleChar, MultChar, U1Char};
use lg_padic::{EtaleAlgebra, PAdicField};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-10
}

fn algebras(f: PAdicField) -> [EtaleAlgebra; 2] {
    [EtaleAlgebra::unramified(f), EtaleAlgebra::ramified(f)]
}

#[test]
fn legendre_character_matches_square_search() {
    let f = PAdicField::new(3, 12).unwrap();
    let chi = MultChar::from_generator_phases(Base::F(f), 1, vec![1], Complex64::new(1.0, 0.0)).unwrap();
    for a in 1..3u64 {
        let is_square = (1..3u64).any(|x| (x * x) % 3 == a);
        let expect = if is_square { 1.0 } else { -1.0 };
        assert!(close(chi.eval_f(&f.from_i64(a as i64)).unwrap(), Complex64::new(expect, 0.0)));
    }
}

#[test]
fn depth_is_minimal() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [3, 5] {
        let f = PAdicField::new(p, 12).unwrap();
        for _ in 0..20 {
            let chi = MultChar::random(Base::F(f), 3, 2, &mut rng).unwrap();
            let d = chi.depth();
            if d == 0 {
                continue;
            }
            // trivial on 1 + p^d, nontrivial somewhere on 1 + p^{d-1} (or on units if d = 1)
            let m = p.pow(d);
            for k in 0..p.pow(2) {
                let x = f.from_i64(1 + (m * k) as i64);
                assert!(close(chi.eval_f(&x).unwrap(), Complex64::new(1.0, 0.0)));
            }
            let start = if d == 1 { 1 } else { p.pow(d - 1) };
            let witness = (0..p.pow(d))
                .map(|k| if d == 1 { k + 1 } else { 1 + start * k })
                .filter(|x| x % p != 0)
                .any(|x| !close(chi.eval_f(&f.from_i64(x as i64)).unwrap(), Complex64::new(1.0, 0.0)));
            assert!(witness, "depth {d} not minimal");
        }
    }
}

#[test]
fn conjugate_dual_is_an_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [3, 5, 7] {
        let f = PAdicField::new(p, 12).unwrap();
        for alg in [EtaleAlgebra::split(f), EtaleAlgebra::unramified(f), EtaleAlgebra::ramified(f)] {
            let tau = EtaleChar::random(alg, 2, 6, &mut rng).unwrap();
            let back = tau.conjugate_dual().unwrap().conjugate_dual().unwrap();
            assert_eq!(tau.conjugate_dual().unwrap().depth(), tau.depth());
            for _ in 0..50 {
                let z = alg.random(&mut rng, -2, 2);
                let (x, y) = alg.to_pair(&z);
                if !alg.is_field() && (x.is_zero() || y.is_zero()) {
                    continue;
                }
                assert!(close(tau.eval(&alg, &z).unwrap(), back.eval(&alg, &z).unwrap()));
            }
        }
    }
}

#[test]
fn additive_characters_are_homomorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [3, 5, 7] {
        let f = PAdicField::new(p, 12).unwrap();
        let psi = AddChar::with_conductor(f, 1);
        for _ in 0..200 {
            let x = f.random(&mut rng, -3, 3);
            let y = f.random(&mut rng, -3, 3);
            assert!(close(psi.eval(&x.add(&y)).unwrap(), psi.eval(&x).unwrap() * psi.eval(&y).unwrap()));
            assert!((psi.eval(&x).unwrap().norm() - 1.0).abs() < 1e-12);
        }
        for alg in algebras(f) {
            let psi_e = AddCharE::from_f(alg, &psi);
            for _ in 0..200 {
                let x = alg.random(&mut rng, -2, 2);
                let y = alg.random(&mut rng, -2, 2);
                let lhs = psi_e.eval(&alg.add(&x, &y)).unwrap();
                assert!(close(lhs, psi_e.eval(&x).unwrap() * psi_e.eval(&y).unwrap()));
            }
        }
    }
}

/// Smallest n with ψ trivial on p^n O, by direct search over p^k·(0..p^3).
fn search_conductor_f(psi: &AddChar, f: PAdicField) -> i32 {
    let p = f.p();
    let trivial_on = |k: i32| (0..p.pow(3)).all(|r| close(psi.eval(&f.from_i64(r as i64).shift(k)).unwrap(), 1.0.into()));
    let mut k = -8;
    while !trivial_on(k) {
        k += 1;
    }
    k
}

#[test]
fn twisted_conductors_shift_by_valuation() {
    for p in [3, 5, 7] {
        let f = PAdicField::new(p, 12).unwrap();
        let psi = AddChar::with_conductor(f, 0);
        let delta = EtaleAlgebra::ramified(f).delta_sq();
        for c in [f.from_i64(2), delta, f.uniformizer(), f.pow_p(-1)] {
            let t = psi.twist(&c).unwrap();
            assert_eq!(t.conductor(), psi.conductor() - c.val());
            assert_eq!(search_conductor_f(&t, f), t.conductor());
        }
        assert_eq!(psi.psi2().conductor(), psi.conductor());
    }
}

#[test]
fn etale_conductor_matches_search() {
    for p in [3, 5] {
        let f = PAdicField::new(p, 12).unwrap();
        for n in [0, 1] {
            let psi = AddChar::with_conductor(f, n);
            for alg in algebras(f) {
                let psi_e = AddCharE::from_f(alg, &psi);
                let trivial_on = |k: i32| {
                    let pi = alg.uniformizer_pow(k).unwrap();
                    alg.unit_keys(2).iter().all(|&key| {
                        let z = alg.mul(&pi, &alg.from_key(key, 2));
                        close(psi_e.eval(&z).unwrap(), 1.0.into())
                    })
                };
                let mut k = -8;
                while !trivial_on(k) {
                    k += 1;
                }
                assert_eq!(psi_e.conductor().unwrap(), k, "{:?} n = {n}", alg.kind());
            }
        }
    }
}

#[test]
fn omega_is_the_norm_character() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for p in [3, 5, 7] {
        let f = PAdicField::new(p, 12).unwrap();
        assert_eq!(omega_ef(&EtaleAlgebra::unramified(f), &f.uniformizer()).unwrap(), -1);
        for alg in algebras(f) {
            let w = omega_char(&alg).unwrap();
            for _ in 0..100 {
                let z = alg.random(&mut rng, -2, 2);
                let n = alg.norm(&z);
                assert_eq!(omega_ef(&alg, &n).unwrap(), 1);
                assert!(close(w.eval_f(&n).unwrap(), 1.0.into()));
            }
            for _ in 0..200 {
                let x = f.random(&mut rng, -3, 3);
                let y = f.random(&mut rng, -3, 3);
                let lhs = omega_ef(&alg, &x.mul(&y)).unwrap();
                assert_eq!(lhs, omega_ef(&alg, &x).unwrap() * omega_ef(&alg, &y).unwrap());
                assert!(close(w.eval_f(&x).unwrap(), (omega_ef(&alg, &x).unwrap() as f64).into()));
            }
        }
    }
}

#[test]
fn pulled_back_characters_invert_under_theta() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for p in [3, 5, 7] {
        let f = PAdicField::new(p, 12).unwrap();
        for alg in algebras(f) {
            let eta1 = U1Char::random(alg, 2, &mut rng).unwrap();
            let eta = eta1.pullback();
            for _ in 0..100 {
                let a = alg.random(&mut rng, -2, 2);
                let lhs = eta.eval_e(&alg.theta(&a)).unwrap();
                assert!(close(lhs, 1.0 / eta.eval_e(&a).unwrap()));
                let alpha = alg.ratio(&a).unwrap();
                assert!(close(eta1.eval(&alpha).unwrap(), eta.eval_e(&a).unwrap()));
                let x = f.random(&mut rng, -3, 3);
                assert!(close(eta.eval_e(&alg.from_f(x)).unwrap(), 1.0.into()));
            }
            let nu = MultChar::unramified(Base::E(alg), Complex64::new(0.0, 1.0)).unwrap();
            assert!(matches!(U1Char::from_pullback(nu), Err(CharError::NotTrivialOnF(_))));
        }
    }
}
