use lg_chars::{psi0, AddChar};
use lg_godement::minimal::from_e_coordinates;
use lg_godement::*;
use lg_padic::{EtaleAlgebra, PAdicField};
use lg_tate::{canonical_test_function, Domain, SchwartzFn};
use num_complex::Complex64;

fn e_functions(alg: &EtaleAlgebra) -> Vec<SchwartzFn> {
    let f = alg.field();
    let dom = Domain::E(*alg);
    vec![
        SchwartzFn::unit_box(f, 2),
        canonical_test_function(&dom, 1),
        canonical_test_function(&dom, 2).add(&SchwartzFn::indicator(f, vec![f.zero(), f.one()], vec![0, 1]).unwrap().scale(Complex64::new(0.0, 1.5))).unwrap(),
    ]
}

#[test]
fn field_lemma_holds_pointwise() {
    for p in [3u64, 5, 7] {
        let f = PAdicField::new(p, 14).unwrap();
        for alg in [EtaleAlgebra::unramified(f), EtaleAlgebra::ramified(f)] {
            for psi in [AddChar::standard(f), AddChar::with_conductor(f, 1)] {
                for big in e_functions(&alg) {
                    let r = verify_ft_field(&alg, &big, &psi, 60, p).unwrap();
                    assert!(r.samples >= 50);
                    assert!(r.max_dev_first < 1e-9, "{:?}: {}", alg.kind(), r.max_dev_first);
                }
            }
        }
    }
}

#[test]
fn split_lemma_holds_pointwise() {
    for p in [3u64, 5, 7] {
        let f = PAdicField::new(p, 14).unwrap();
        let dom = Domain::F(f);
        let pieces = [
            SchwartzFn::unit_box(f, 1),
            canonical_test_function(&dom, 1),
            SchwartzFn::indicator(f, vec![f.from_i64(2)], vec![2]).unwrap(),
        ];
        for psi in [AddChar::standard(f), AddChar::with_conductor(f, -1)] {
            for a in &pieces {
                for b in &pieces {
                    let r = verify_ft_split(a, b, &psi, 60, p).unwrap();
                    assert!(r.max_dev_first < 1e-9 && r.max_dev_second < 1e-9, "{r:?}");
                }
            }
        }
    }
}

/// φ̂(x, y) for φ = 1_{O²} by a finite sum over (O/p^k)² at the point's scale.
fn direct_symplectic(f: &PAdicField, x: &lg_padic::PAdic, y: &lg_padic::PAdic, k: u32) -> Complex64 {
    let two = f.from_i64(2);
    let n = f.p().pow(k);
    let mut acc = Complex64::new(0.0, 0.0);
    for z in 0..n {
        for w in 0..n {
            let arg = two.mul(&f.from_i64(z as i64).mul(y).sub(&f.from_i64(w as i64).mul(x)));
            acc += psi0(&arg).unwrap();
        }
    }
    acc / (n * n) as f64
}

#[test]
fn symplectic_transform_of_the_unit_lattice_matches_a_direct_sum() {
    let f = PAdicField::new(3, 14).unwrap();
    let alg = EtaleAlgebra::unramified(f);
    let psi = AddChar::standard(f);
    let phi = from_e_coordinates(&alg, &SchwartzFn::unit_box(f, 2)).unwrap();
    assert!((phi.eval(&[f.one(), f.one()]).unwrap() - 1.0).norm() < 1e-15);
    let hat = symplectic_fourier(&phi, &psi).unwrap();
    let pts = [(0i64, 0i64, 0i32), (1, 0, -1), (1, 2, -1), (2, 1, 0), (1, 1, -2), (0, 1, -1)];
    for (a, b, v) in pts {
        let x = f.from_i64(a).mul(&f.pow_p(v));
        let y = f.from_i64(b).mul(&f.pow_p(v));
        let want = direct_symplectic(&f, &x, &y, (-v).max(0) as u32 + 1);
        let got = hat.eval(&[x, y]).unwrap();
        assert!((got - want).norm() < 1e-9, "({a}, {b}, {v}): {got} against {want}");
    }
    let r = verify_ft_field(&alg, &SchwartzFn::unit_box(f, 2), &psi, 50, 0).unwrap();
    assert!(r.max_dev_first < 1e-9);
}
