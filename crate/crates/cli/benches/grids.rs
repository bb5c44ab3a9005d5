use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lg_cli::config::{self, Run};
use lg_cli::suites::{analytic_jobs, groups, run_suites};
use lg_cli::{prepare, Mode};

const MODES: [Mode; 2] = [Mode::Sequential, Mode::Parallel];

fn load(p: u64, suite: &str, trials: usize) -> Run {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("configs/p{p}.toml"));
    let mut cfg = config::load(&path).unwrap();
    cfg.trials = trials;
    prepare(cfg, &[suite.to_string()], None).unwrap()
}

/// Whole suites through the worker pool.
fn verification_grid(c: &mut Criterion) {
    let mut g = c.benchmark_group("verification_grid");
    g.sample_size(10);
    for suite in ["tate", "minimal-split"] {
        let run = load(5, suite, 100);
        for mode in MODES {
            g.bench_with_input(BenchmarkId::new(suite, format!("{mode:?}")), &run, |b, r| b.iter(|| run_suites(r, mode).unwrap()));
        }
    }
    g.finish();
}

fn catalog_trials(c: &mut Criterion) {
    let mut g = c.benchmark_group("catalog_trials");
    g.sample_size(10);
    let run = load(3, "matrix-catalog", 10);
    for mode in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &run, |b, r| {
            b.iter(|| groups::catalog_cases(r, mode).unwrap())
        });
    }
    g.finish();
}

/// Minimal-field jobs run one after another, so only the shell sums inside
/// each job use the pool.
fn shell_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("shell_sums");
    g.sample_size(10);
    let run = load(5, "minimal-field", 100);
    for mode in MODES {
        let jobs = analytic_jobs(&run, "minimal-field", mode);
        g.bench_function(BenchmarkId::from_parameter(format!("{mode:?}")), |b| {
            b.iter(|| jobs.iter().map(|j| j().len()).sum::<usize>())
        });
    }
    g.finish();
}

criterion_group!(benches, verification_grid, catalog_trials, shell_sums);
criterion_main!(benches);
