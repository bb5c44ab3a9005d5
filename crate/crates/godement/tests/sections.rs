use lg_chars::{AddChar, EtaleChar};
use lg_godement::matrix::{conj_sl2, decompose, is_unitary, mul_e, torus_e, MatF};
use lg_godement::*;
use lg_padic::{EtaleAlgebra, PAdicField};
use lg_par::Mode;
use lg_symbolic::{lr_deviation, lr_equal, LaurentRational};
use lg_tate::SchwartzFn;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_sl2<R: Rng>(f: &PAdicField, rng: &mut R) -> MatF {
    let x = f.random(rng, -1, 1);
    let y = f.random(rng, -1, 1);
    let z = f.random(rng, -1, 1);
    let w = f.one().add(&y.mul(&z)).div(&x).unwrap();
    [[x, y], [z, w]]
}

fn sample_phi<R: Rng>(f: &PAdicField, rng: &mut R) -> SchwartzFn {
    let a = SchwartzFn::indicator(*f, vec![f.from_i64(rng.gen_range(0..3)), f.one()], vec![1, rng.gen_range(0..2)]).unwrap();
    let b = SchwartzFn::unit_box(*f, 2).scale(Complex64::new(0.5, -0.25));
    a.add(&b).unwrap()
}

#[test]
fn field_sections_ignore_the_choice_of_decomposition() {
    let f = PAdicField::new(5, 14).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for alg in [EtaleAlgebra::unramified(f), EtaleAlgebra::ramified(f)] {
        let tau = EtaleChar::random(alg, 1, 4, &mut rng).unwrap();
        let sec = GodementSection::new(alg, sample_phi(&f, &mut rng), tau).unwrap();
        for _ in 0..50 {
            let mut a = alg.random(&mut rng, -1, 1);
            while alg.norm(&a).is_zero() {
                a = alg.random(&mut rng, -1, 1);
            }
            let h = mul_e(&alg, &torus_e(&alg, &a).unwrap(), &conj_sl2(&alg, &random_sl2(&f, &mut rng)).unwrap());
            assert!(is_unitary(&alg, &h));
            let (a0, _) = decompose(&alg, &h).unwrap();
            let base = sec.eval(&U2Element::Field(h)).unwrap();
            let u = f.random(&mut rng, -2, 2);
            let other = sec.eval_with_torus(&alg.scale(&u, &a0), &h).unwrap();
            assert!(lr_equal(&base, &other, 1e-9), "{base} against {other}");
        }
    }
}

#[test]
fn left_torus_action_is_a_monomial() {
    let f = PAdicField::new(3, 14).unwrap();
    let alg = EtaleAlgebra::unramified(f);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let tau = EtaleChar::random(alg, 1, 4, &mut rng).unwrap();
    let EtaleChar::Field(chi) = &tau else { unreachable!() };
    let sec = GodementSection::new(alg, sample_phi(&f, &mut rng), tau.clone()).unwrap();
    for _ in 0..20 {
        let h = conj_sl2(&alg, &random_sl2(&f, &mut rng)).unwrap();
        let a = alg.random(&mut rng, -1, 1);
        let moved = mul_e(&alg, &torus_e(&alg, &a).unwrap(), &h);
        let lhs = sec.eval(&U2Element::Field(moved)).unwrap();
        let rhs = sec.eval(&U2Element::Field(h)).unwrap().mul_monomial(chi.eval_e(&a).unwrap(), alg.f() as i32 * alg.v_e(&a).unwrap());
        assert!(lr_equal(&lhs, &rhs, 1e-9));
    }
}

#[test]
fn identity_value_is_the_tate_integral_on_the_second_axis() {
    let f = PAdicField::new(3, 14).unwrap();
    let alg = EtaleAlgebra::unramified(f);
    let tau = EtaleChar::trivial(alg).unwrap();
    let sec = GodementSection::new(alg, SchwartzFn::unit_box(f, 2), tau).unwrap();
    let id = U2Element::Field([[alg.one(), alg.zero()], [alg.zero(), alg.one()]]);
    // ∫_O |t|^{2s} d^×t = (1 − q^{-1})/(1 − X²)
    let want = LaurentRational::geometric(3, Complex64::new(2.0 / 3.0, 0.0), Complex64::new(1.0, 0.0), 2).unwrap();
    assert!(lr_equal(&sec.eval(&id).unwrap(), &want, 1e-12));
}

fn characters(alg: EtaleAlgebra, rng: &mut ChaCha8Rng) -> Vec<EtaleChar> {
    let mut out = vec![EtaleChar::trivial(alg).unwrap()];
    for d in [0u32, 1, 1] {
        out.push(EtaleChar::random(alg, d, 4, rng).unwrap());
    }
    out
}

#[test]
fn raw_intertwining_matches_its_closed_form() {
    let f = PAdicField::new(3, 14).unwrap();
    let psi = AddChar::standard(f);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for alg in [EtaleAlgebra::split(f), EtaleAlgebra::unramified(f), EtaleAlgebra::ramified(f)] {
        for tau in characters(alg, &mut rng) {
            for phi in [SchwartzFn::unit_box(f, 2), sample_phi(&f, &mut rng)] {
                let sec = GodementSection::new(alg, phi, tau.clone()).unwrap();
                let raw = intertwine_at_identity(&sec, &psi, Mode::Parallel).unwrap();
                let closed = intertwine_closed_form(&sec, &psi).unwrap();
                assert!(lr_equal(&raw, &closed, 1e-8), "{:?}: {raw} against {closed} (dev {})", alg.kind(), lr_deviation(&raw, &closed));
            }
        }
    }
}

#[test]
fn normalization_certificate_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for p in [3u64, 5] {
        let f = PAdicField::new(p, 14).unwrap();
        let psi = AddChar::standard(f);
        for alg in [EtaleAlgebra::split(f), EtaleAlgebra::unramified(f), EtaleAlgebra::ramified(f)] {
            for tau in characters(alg, &mut rng) {
                let sec = GodementSection::new(alg, sample_phi(&f, &mut rng), tau).unwrap();
                let cert = normalization_certificate(&sec, &psi, 1e-9, Mode::Parallel).unwrap();
                assert!(!cert.lhs.is_zero() || cert.rhs.is_zero());
            }
        }
    }
}

#[test]
fn applying_the_normalized_operator_twice_returns_the_section() {
    let f = PAdicField::new(5, 14).unwrap();
    let psi = AddChar::with_conductor(f, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for alg in [EtaleAlgebra::split(f), EtaleAlgebra::ramified(f)] {
        let tau = EtaleChar::random(alg, 1, 4, &mut rng).unwrap();
        let sec = GodementSection::new(alg, sample_phi(&f, &mut rng), tau).unwrap();
        let twice = intertwine_normalized(&intertwine_normalized(&sec, &psi).unwrap(), &psi).unwrap();
        assert!(!twice.is_reflected());
        assert!((twice.scalar() - 1.0).norm() < 1e-12);
        for _ in 0..30 {
            let pt = sec.phi().random_point(&mut rng, -2, 3);
            assert!((twice.phi().eval(&pt).unwrap() - sec.phi().eval(&pt).unwrap()).norm() < 1e-9);
        }
    }
}
