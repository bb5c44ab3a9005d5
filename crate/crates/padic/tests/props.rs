use lg_padic::{EtaleAlgebra, EtaleKind, PAdicField};
use proptest::prelude::*;

fn elt(f: &PAdicField, v: i32, u: u64) -> lg_padic::PAdic {
    f.from_parts(v, u * f.p() + 1 + (u % (f.p() - 1)))
}

proptest! {
    #[test]
    fn ultrametric(v1 in -4i32..4, v2 in -4i32..4, u1 in 0u64..10000, u2 in 0u64..10000) {
        let f = PAdicField::new(5, 12).unwrap();
        let x = elt(&f, v1, u1);
        let y = elt(&f, v2, u2);
        let s = x.add(&y);
        let m = x.norm_abs().max(y.norm_abs());
        prop_assert!(s.norm_abs() <= m * (1.0 + 1e-12));
        if v1 != v2 {
            prop_assert!((s.norm_abs() - m).abs() < 1e-12 * m);
        }
    }

    #[test]
    fn theta_is_an_involutive_automorphism(a in 0u64..5000, b in 0u64..5000, c in 0u64..5000, d in 0u64..5000, kind in 0usize..3) {
        let f = PAdicField::new(7, 12).unwrap();
        let kinds = [EtaleKind::Split, EtaleKind::Unramified, EtaleKind::Ramified];
        let e = EtaleAlgebra::of_kind(f, kinds[kind]);
        let z = e.elt(f.from_i64(a as i64), f.from_i64(b as i64));
        let w = e.elt(f.from_i64(c as i64), f.from_i64(d as i64));
        prop_assert!(e.approx_eq(&e.theta(&e.mul(&z, &w)), &e.mul(&e.theta(&z), &e.theta(&w))));
        prop_assert!(e.approx_eq(&e.theta(&e.theta(&z)), &z));
        let fx = e.from_f(f.from_i64(a as i64));
        prop_assert!(e.approx_eq(&e.theta(&fx), &fx));
    }

    #[test]
    fn ratio_has_norm_one(a in 1u64..5000, b in 0u64..5000, kind in 1usize..3) {
        let f = PAdicField::new(3, 12).unwrap();
        let kinds = [EtaleKind::Split, EtaleKind::Unramified, EtaleKind::Ramified];
        let e = EtaleAlgebra::of_kind(f, kinds[kind]);
        let z = e.elt(f.from_i64(a as i64), f.from_i64(b as i64));
        let r = e.ratio(&z).unwrap();
        prop_assert!(e.norm(&r).approx_eq(&f.one()));
    }
}
