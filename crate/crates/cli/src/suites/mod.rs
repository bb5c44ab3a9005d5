//! The verification suites. Analytic suites turn the configuration into
//! independent jobs that are dispatched together to the worker pool; the
//! matrix suites hand their grid to the catalog runner. Output is grouped by
//! suite and ordered by case id.

use std::collections::BTreeMap;

use lg_par::Mode;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::anchors::suite_of;
use crate::config::Run;
use crate::error::Result;
use crate::report::Case;

pub mod ft;
pub mod groups;
pub mod intertwine;
pub mod lambda;
pub mod minimal;
pub mod tate;

/// A unit of work producing one or more cases.
pub type Job<'a> = Box<dyn Fn() -> Vec<Case> + Send + Sync + 'a>;

/// A random stream for one part of the run, fixed by the seed and a label.
pub fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in format!("{seed}|{label}").bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(h)
}

/// Zero-padded index so that ids sort numerically.
pub fn idx(i: usize) -> String {
    format!("{i:02}")
}

/// The jobs of one analytic suite.
pub fn analytic_jobs<'a>(run: &'a Run, suite: &str, mode: Mode) -> Vec<Job<'a>> {
    match suite {
        "tate" => tate::jobs(run),
        "lambda" => lambda::jobs(run),
        "intertwine" => intertwine::jobs(run, mode),
        "ft-lemmas" => ft::jobs(run),
        "minimal-field" => minimal::jobs(run, true, mode),
        "minimal-split" => minimal::jobs(run, false, mode),
        _ => Vec::new(),
    }
}

/// Runs every selected suite and groups the cases by suite, sorted by id.
pub fn run_suites(run: &Run, mode: Mode) -> Result<BTreeMap<String, Vec<Case>>> {
    let mut jobs = Vec::new();
    for s in &run.config.suites {
        jobs.extend(analytic_jobs(run, s, mode));
    }
    let mut cases: Vec<Case> = lg_par::map(mode, &jobs, |job| job()).into_iter().flatten().collect();
    if run.has_suite("matrix-catalog") {
        cases.extend(groups::catalog_cases(run, mode)?);
    }
    if run.has_suite("jacobians") {
        cases.extend(groups::jacobian_cases(run, mode)?);
    }
    let mut out: BTreeMap<String, Vec<Case>> = run.config.suites.iter().map(|s| (s.clone(), Vec::new())).collect();
    for c in cases {
        out.entry(suite_of(&c.id).to_string()).or_default().push(c);
    }
    for v in out.values_mut() {
        v.sort_by(|a, b| a.id.cmp(&b.id));
    }
    Ok(out)
}
