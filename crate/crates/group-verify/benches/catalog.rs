use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lg_groups::catalog::{run_catalog, run_jacobians, CatalogOptions};
use lg_par::Mode;

fn catalog_trials(c: &mut Criterion) {
    let mut g = c.benchmark_group("catalog_trials");
    g.sample_size(10);
    for mode in [Mode::Sequential, Mode::Parallel] {
        let opts = CatalogOptions { trials: 8, mode, sections: Some(vec!["parabolic".into(), "switch-middle".into()]), ..Default::default() };
        g.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &opts, |b, o| b.iter(|| run_catalog(o).unwrap()));
    }
    g.finish();
}

fn jacobians(c: &mut Criterion) {
    let mut g = c.benchmark_group("jacobians");
    g.sample_size(10);
    for mode in [Mode::Sequential, Mode::Parallel] {
        let opts = CatalogOptions { trials: 4, mode, ..Default::default() };
        g.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &opts, |b, o| b.iter(|| run_jacobians(o).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, catalog_trials, jacobians);
criterion_main!(benches);
