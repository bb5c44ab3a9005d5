use lg_groups::catalog::{expand, manifest, run_catalog, run_jacobians, standard_tuples, CatalogOptions, Condition};
use lg_groups::identities::{builder, Checker, Params};
use lg_groups::jacobian::{jacobian_builder, jacobian_exponent};
use lg_groups::structures::{embed, j_upper, Embedding};
use lg_groups::{Alg, GroupError, Mat};
use lg_par::Mode;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quick() -> CatalogOptions {
    CatalogOptions { trials: 4, ..Default::default() }
}

#[test]
fn every_entry_passes_on_the_standard_grid() {
    let reports = run_catalog(&quick()).unwrap();
    let failing: Vec<_> = reports.iter().filter(|r| !r.passed).map(|r| format!("{} {} {}", r.id, r.semantics, r.params)).collect();
    assert!(failing.is_empty(), "{failing:?}");
    let m = manifest().unwrap();
    for e in &m.entry {
        for sem in ["field", "split"] {
            assert!(reports.iter().any(|r| r.id == e.id && r.semantics == sem), "{} never ran in {sem}", e.id);
        }
    }
}

#[test]
fn degenerate_blocks_are_reported_but_evaluated() {
    let opts = CatalogOptions { sections: Some(vec!["parabolic".into()]), ..quick() };
    let reports = run_catalog(&opts).unwrap();
    let at_l0: Vec<_> = reports.iter().filter(|r| r.id == "parabolic.pbar-conjugation" && r.params.starts_with("n=1 r=2")).collect();
    assert_eq!(at_l0.len(), 2);
    assert!(at_l0.iter().all(|r| r.empty_block && r.passed));
}

#[test]
fn sequential_and_parallel_runs_agree() {
    let opts = CatalogOptions { sections: Some(vec!["switch-middle".into()]), trials: 2, ..Default::default() };
    let par = run_catalog(&opts).unwrap();
    let seq = run_catalog(&CatalogOptions { mode: Mode::Sequential, ..opts }).unwrap();
    assert_eq!(par, seq);
}

#[test]
fn jacobian_exponents_match() {
    let reports = run_jacobians(&quick()).unwrap();
    assert!(reports.iter().all(|r| r.passed), "{reports:?}");
    let pbar = reports.iter().find(|r| r.id == "jacobian.pbar" && r.params == "n=1 r=3 k=1").unwrap();
    assert_eq!(pbar.observed, Some(-1));
    let c = reports.iter().find(|r| r.id == "jacobian.c-levi" && r.params == "n=2 r=4 k=1").unwrap();
    assert_eq!(c.observed, Some(1));
}

#[test]
fn identity_conjugation_has_exponent_zero() {
    let f = jacobian_builder("identity").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (n, r) in [(1, 3), (3, 2)] {
        let case = f(&Params { n, r, k: None, split: None }, Alg::Split, &mut rng).unwrap();
        assert_eq!(jacobian_exponent(&case.sub, &case.g, &case.nu).unwrap(), 0);
    }
}

#[test]
fn w_inverse_k_at_two_four_one() {
    let f = builder("lwk_blocks").unwrap();
    let p = Params { n: 2, r: 4, k: Some(1), split: None };
    for alg in [Alg::field2(), Alg::Split] {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut ck = Checker::new();
        f(&p, alg, &mut rng, &mut ck).unwrap();
        assert_eq!(ck.failure(), None);
    }
}

#[test]
fn upper_embedding_in_the_smallest_case() {
    let alg = Alg::field2();
    let a = lg_groups::K::new(lg_groups::scalar::q_frac(1, 3), lg_groups::scalar::q(2));
    let g = Mat::from_fn(alg, 1, 1, |_, _| a.clone());
    let half = lg_groups::scalar::q_frac(1, 2);
    let one = alg.one();
    let want = Mat::from_fn(alg, 2, 2, |i, j| if i == j { one.add(&a).scale(&half) } else { one.sub(&a).scale(&half) });
    assert_eq!(j_upper(0, 1, &g).unwrap(), want);
}

#[test]
fn embeddings_reject_bad_input() {
    let alg = Alg::Split;
    let g = Mat::from_ints(alg, &[&[1, 1], &[0, 1]]);
    assert!(matches!(embed(Embedding::Lower, 2, 1, &g), Err(GroupError::NotInSourceGroup(_))));
    assert!(matches!(j_upper(2, 2, &Mat::identity(alg, 5)), Err(GroupError::BadSize(_))));
    assert!(matches!(Mat::zeros(alg, 2, 2).inverse(), Err(GroupError::Singular(_))));
}

#[test]
fn conditions_select_the_documented_cases() {
    let ps = expand(&Condition::parse("n<r2").unwrap(), &standard_tuples());
    let got: Vec<_> = ps.iter().map(|p| (p.n, p.r, p.split.unwrap())).collect();
    assert_eq!(got, vec![(1, 3, (1, 2)), (2, 4, (1, 3))]);
    let ps = expand(&Condition::parse("r<=n, r2>=1").unwrap(), &standard_tuples());
    let got: Vec<_> = ps.iter().map(|p| (p.n, p.r)).collect();
    assert_eq!(got, vec![(2, 2), (3, 2)]);
}
