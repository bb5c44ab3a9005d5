use lg_chars::{AddChar, Base, EtaleChar, MultChar, PiChar, U1Char};
use lg_godement::*;
use lg_padic::{EtaleAlgebra, PAdicField};
use lg_par::Mode;
use lg_symbolic::lr_equal;
use lg_tate::SchwartzFn;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn case(alg: EtaleAlgebra, depth: u32, seed: u64) -> (PiChar, EtaleChar) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if alg.is_field() {
        let nu = MultChar::random(Base::E(alg), depth, 4, &mut rng).unwrap();
        let pi = PiChar::Field(U1Char::from_character(&nu).unwrap());
        (pi, EtaleChar::random(alg, depth, 4, &mut rng).unwrap())
    } else {
        let eta = MultChar::random(Base::F(alg.field()), depth, 4, &mut rng).unwrap();
        (PiChar::Split(eta), EtaleChar::random(alg, depth, 4, &mut rng).unwrap())
    }
}

fn algebras(p: u64) -> Vec<EtaleAlgebra> {
    let f = PAdicField::new(p, 14).unwrap();
    vec![EtaleAlgebra::split(f), EtaleAlgebra::unramified(f), EtaleAlgebra::ramified(f)]
}

#[test]
fn direct_and_tate_periods_agree() {
    for p in [3u64, 5] {
        for alg in algebras(p) {
            let psi = AddChar::standard(alg.field());
            for (depth, seed) in [(0u32, 1u64), (1, 2), (1, 3)] {
                let (pi, tau) = case(alg, depth, seed + p);
                for phi in test_functions(&pi, &tau, &alg).unwrap() {
                    let sec = GodementSection::new(alg, phi, tau.clone()).unwrap();
                    for s in [sec.clone(), sec.dual(&psi).unwrap()] {
                        let a = period_direct(&pi, &s, Mode::Parallel).unwrap();
                        let b = period_tate(&pi, &s).unwrap();
                        assert!(lr_equal(&a, &b, 1e-9), "{:?}: {a} against {b}", alg.kind());
                    }
                }
            }
        }
    }
}

#[test]
fn trivial_data_on_the_unit_lattice() {
    let f = PAdicField::new(3, 14).unwrap();
    let alg = EtaleAlgebra::unramified(f);
    let pi = PiChar::Field(U1Char::trivial(alg).unwrap());
    let sec = GodementSection::new(alg, SchwartzFn::unit_box(f, 2), EtaleChar::trivial(alg).unwrap()).unwrap();
    let a = period_direct(&pi, &sec, Mode::Sequential).unwrap();
    let b = period_tate(&pi, &sec).unwrap();
    assert!(lr_equal(&a, &b, 1e-12));
    assert!(!a.is_zero());
}

#[test]
fn ramified_twist_on_a_coarse_function_has_zero_period() {
    let f = PAdicField::new(5, 14).unwrap();
    let alg = EtaleAlgebra::unramified(f);
    let pi = PiChar::Field(U1Char::trivial(alg).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let tau = loop {
        let t = EtaleChar::random(alg, 1, 4, &mut rng).unwrap();
        if t.depth() == 1 {
            break t;
        }
    };
    let sec = GodementSection::new(alg, SchwartzFn::unit_box(f, 2), tau).unwrap();
    assert!(period_direct(&pi, &sec, Mode::Sequential).unwrap().is_zero());
    let psi = AddChar::standard(f);
    assert!(matches!(gamma_delta(&pi, &sec, &psi, Mode::Sequential), Err(GodementError::ZeroDenominator)));
}

#[test]
fn minimal_identities_hold_for_every_test_function() {
    for p in [3u64, 5] {
        for alg in algebras(p) {
            let psi = AddChar::standard(alg.field());
            for (depth, seed) in [(0u32, 10u64), (1, 11), (2, 12)] {
                let (pi, tau) = case(alg, depth, seed * p);
                let want = expected_gamma_delta(&pi, &tau, &psi, &alg).unwrap();
                let found = gamma_delta_over_functions(&pi, &tau, &psi, &alg, 3, Mode::Parallel).unwrap();
                assert_eq!(found.len(), 3);
                for g in &found {
                    assert!(lr_equal(&g.gamma, &want, 1e-9), "{:?} depth {depth}: {} against {want}", alg.kind(), g.gamma);
                }
            }
        }
    }
}

#[test]
fn rs_gamma_differs_from_wd_by_a_unit_constant() {
    for p in [3u64, 5, 7] {
        for alg in algebras(p) {
            let psi = AddChar::standard(alg.field());
            let (pi, tau) = case(alg, 1, 40 + p);
            let g = &gamma_delta_over_functions(&pi, &tau, &psi, &alg, 1, Mode::Parallel).unwrap()[0];
            let cmp = compare_with_wd(&pi, &tau, &psi, &alg, &g.gamma).unwrap();
            let c = cmp.ratio.as_constant(1e-9).expect("ratio depends on X");
            assert!((c.norm() - 1.0).abs() < 1e-9);
            if alg.is_field() {
                let lambda = lg_tate::lambda_ef(&alg, &psi).unwrap();
                assert!((c - 1.0 / lambda).norm() < 1e-9, "ratio {c}, λ {lambda}");
            } else {
                assert!((c - 1.0).norm() < 1e-9);
            }
        }
    }
}
