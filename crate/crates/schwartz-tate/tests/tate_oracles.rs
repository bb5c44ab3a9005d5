use lg_chars::{AddChar, Base, MultChar};
use lg_padic::{EtaleAlgebra, PAdic, PAdicField};
use lg_symbolic::{lr_equal, LaurentRational};
use lg_tate::{canonical_test_function, fourier, gamma_wd, gamma_with, tate_integral, Domain, SchwartzFn};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Shell sums over valuations -6..=40 at a fixed generous level; the
/// truncated integral at X is Σ shell_v X^{f v}.
fn truncated_shells(dom: &Domain, phi: &SchwartzFn, chi: &MultChar, vol: f64, level: u32) -> Vec<(i32, Complex64)> {
    let f = dom.field();
    let qd = dom.q_dom() as f64;
    let mut out = Vec::new();
    for v in -6..=40 {
        let keys: Vec<u64> = match dom {
            Domain::F(_) => (1..f.p().pow(level)).filter(|k| k % f.p() != 0).collect(),
            Domain::E(e) => e.unit_keys(level),
        };
        let mut shell = c(0.0);
        for key in keys {
            let (pt, val) = match dom {
                Domain::F(_) => {
                    let t = f.from_parts(v, key);
                    (vec![t], chi.eval_f(&t).unwrap())
                }
                Domain::E(e) => {
                    let z = e.mul(&e.uniformizer_pow(v).unwrap(), &e.from_key(key, level));
                    (vec![z.a, z.b], chi.eval_e(&z).unwrap())
                }
            };
            shell += phi.eval(&pt).unwrap() * val;
        }
        out.push((dom.f() * v, shell * vol * qd.powi(-(level as i32))));
    }
    out
}

fn sum_at(shells: &[(i32, Complex64)], x: Complex64) -> Complex64 {
    shells.iter().map(|(e, s)| s * x.powi(*e)).sum()
}

fn samples() -> [Complex64; 5] {
    [c(0.2), c(-0.3), Complex64::new(0.1, 0.25), Complex64::new(-0.15, -0.2), c(0.45)]
}

#[test]
fn unit_lattice_with_trivial_character() {
    for p in [3u64, 5, 7] {
        let f = PAdicField::new(p, 12).unwrap();
        let dom = Domain::F(f);
        let chi = MultChar::trivial(Base::F(f)).unwrap();
        let z = tate_integral(&dom, &SchwartzFn::unit_box(f, 1), &chi, 1.0).unwrap();
        let q = p as f64;
        let want = LaurentRational::geometric(p, c(1.0 - 1.0 / q), c(1.0), 1).unwrap();
        assert!(lr_equal(&z, &want, 1e-9), "{z}");
        let shells = truncated_shells(&dom, &SchwartzFn::unit_box(f, 1), &chi, 1.0, 2);
        for x in samples() {
            assert!((sum_at(&shells, x) - z.eval(x)).norm() < 1e-9);
        }
    }
}

#[test]
fn shell_sums_match_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for p in [3u64, 5] {
        let f = PAdicField::new(p, 12).unwrap();
        let doms = [Domain::F(f), Domain::E(EtaleAlgebra::unramified(f)), Domain::E(EtaleAlgebra::ramified(f))];
        for dom in doms {
            let base = match dom {
                Domain::F(f) => Base::F(f),
                Domain::E(e) => Base::E(e),
            };
            for _ in 0..4 {
                let chi = MultChar::random(base, 2, 4, &mut rng).unwrap();
                let psi = AddChar::standard(f);
                let phi = canonical_test_function(&dom, chi.depth());
                let phis = [phi.clone(), fourier(&dom, &phi, &psi).unwrap()];
                let vol = dom.self_dual_volume(&psi);
                for phi in phis {
                    let z = tate_integral(&dom, &phi, &chi, vol).unwrap();
                    let shells = truncated_shells(&dom, &phi, &chi, vol, 3);
                    for x in samples() {
                        let t = sum_at(&shells, x);
                        assert!((t - z.eval(x)).norm() < 1e-8, "{:?} {} vs {}", dom, t, z.eval(x));
                    }
                }
            }
        }
    }
}

#[test]
fn trivial_gamma_closed_form() {
    for p in [3u64, 5, 7] {
        let f = PAdicField::new(p, 12).unwrap();
        let chi = MultChar::trivial(Base::F(f)).unwrap();
        let g = gamma_wd(&chi, &AddChar::standard(f)).unwrap();
        let q = p as f64;
        let num = LaurentRational::from_poly(p, lg_symbolic::LaurentPoly::from_terms(&[(0, c(1.0)), (1, c(-1.0))])).unwrap();
        let den = LaurentRational::from_poly(p, lg_symbolic::LaurentPoly::from_terms(&[(0, c(1.0)), (-1, c(-1.0 / q))])).unwrap();
        assert!(lr_equal(&g, &num.div(&den).unwrap(), 1e-9), "{g}");
    }
}

#[test]
fn ramified_units_integrate_to_zero() {
    let f = PAdicField::new(5, 12).unwrap();
    let chi = MultChar::from_generator_phases(Base::F(f), 1, vec![1], c(1.0)).unwrap();
    let units = SchwartzFn::indicator(f, vec![f.one()], vec![1])
        .unwrap()
        .add(&SchwartzFn::indicator(f, vec![f.from_i64(2)], vec![1]).unwrap())
        .unwrap()
        .add(&SchwartzFn::indicator(f, vec![f.from_i64(3)], vec![1]).unwrap())
        .unwrap()
        .add(&SchwartzFn::indicator(f, vec![f.from_i64(4)], vec![1]).unwrap())
        .unwrap();
    let z = tate_integral(&Domain::F(f), &units, &chi, 1.0).unwrap();
    assert!(z.is_zero() || z.as_constant(1e-12).map(|v| v.norm() < 1e-12).unwrap_or(false));
}

#[test]
fn scaling_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = PAdicField::new(3, 12).unwrap();
    let dom = Domain::F(f);
    for _ in 0..5 {
        let chi = MultChar::random(Base::F(f), 0, 6, &mut rng).unwrap();
        let one = SchwartzFn::unit_box(f, 1);
        // φ(x) = 1_O(x/ϖ) has support ϖO
        let scaled = one.pullback_diag(&[0], &[f.pow_p(-1)]).unwrap();
        let z1 = tate_integral(&dom, &one, &chi, 1.0).unwrap();
        let z2 = tate_integral(&dom, &scaled, &chi, 1.0).unwrap();
        assert!(lr_equal(&z2, &z1.mul_monomial(chi.unif_value(), 1), 1e-9));
    }
}

fn direct_fourier_1d(phi: &SchwartzFn, psi: &AddChar, y: &PAdic, depth: i32) -> Complex64 {
    // ∫ φ(x) ψ(xy) dx as a finite sum over p^{-depth}O / p^{depth}O
    let f = phi.field();
    let p = f.p();
    let n = p.pow(2 * depth as u32);
    let vol = psi.self_dual_volume() * (p as f64).powi(-depth);
    let mut acc = c(0.0);
    for r in 0..n {
        let x = f.from_residue(r).shift(-depth);
        let v = phi.eval(&[x]).unwrap();
        if v.norm() > 0.0 {
            acc += v * psi.eval(&x.mul(y)).unwrap();
        }
    }
    acc * vol
}

#[test]
fn fourier_matches_direct_sum_and_inverts() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f = PAdicField::new(3, 12).unwrap();
    let psi = AddChar::with_conductor(f, 1);
    let phi = SchwartzFn::indicator(f, vec![f.from_ratio(1, 3).unwrap()], vec![1])
        .unwrap()
        .add(&SchwartzFn::indicator(f, vec![f.from_i64(2)], vec![2]).unwrap().scale(c(-0.5)))
        .unwrap();
    let hat = fourier(&Domain::F(f), &phi, &psi).unwrap();
    let back = fourier(&Domain::F(f), &hat, &psi).unwrap();
    for _ in 0..60 {
        let y = f.random(&mut rng, -3, 3);
        let direct = direct_fourier_1d(&phi, &psi, &y, 4);
        assert!((direct - hat.eval(&[y]).unwrap()).norm() < 1e-9);
        assert!((back.eval(&[y]).unwrap() - phi.eval(&[y.neg()]).unwrap()).norm() < 1e-9);
    }
}

#[test]
fn gamma_is_independent_of_the_test_function() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in [3u64, 5] {
        let f = PAdicField::new(p, 12).unwrap();
        for dom in [Domain::F(f), Domain::E(EtaleAlgebra::unramified(f)), Domain::E(EtaleAlgebra::ramified(f))] {
            let base = match dom {
                Domain::F(f) => Base::F(f),
                Domain::E(e) => Base::E(e),
            };
            let psi = AddChar::standard(f);
            for _ in 0..3 {
                let chi = MultChar::random(base, 2, 4, &mut rng).unwrap();
                let g0 = gamma_wd(&chi, &psi).unwrap();
                let d = chi.depth() as i32;
                let lv = dom.levels(d.max(1));
                let alt = match dom {
                    Domain::F(_) => SchwartzFn::indicator(f, vec![f.from_i64(2)], vec![d.max(1)]).unwrap(),
                    Domain::E(_) => SchwartzFn::indicator(f, vec![f.from_i64(2), f.one()], vec![lv[0], lv[1]]).unwrap(),
                };
                if let Ok(g1) = gamma_with(&dom, &chi, &psi, &alt) {
                    assert!(lr_equal(&g0, &g1, 1e-9), "{g0} vs {g1}");
                }
            }
        }
    }
}
