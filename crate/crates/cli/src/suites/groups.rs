//! The matrix catalog and the Jacobian exponents, over the configured
//! (n, r, k, r′, r″) grid in both algebra semantics.

use lg_groups::{run_catalog, run_jacobians, CatalogOptions, EntryReport, JacobianReport};
use lg_par::Mode;

use crate::config::Run;
use crate::error::Result;
use crate::report::{Case, Side, Status};

fn slug(params: &str) -> String {
    params.replace(' ', ",")
}

pub fn options(run: &Run, mode: Mode) -> CatalogOptions {
    CatalogOptions { tuples: run.tuples(), trials: run.config.trials, mode, seed: run.config.seed, ..CatalogOptions::default() }
}

pub fn entry_case(e: &EntryReport) -> Case {
    let held = if e.passed { e.trials } else { 0 };
    Case {
        id: format!("matrix-catalog/{}/{}/{}", e.id, e.semantics, slug(&e.params)),
        anchor: e.anchor.clone(),
        status: if e.passed { Status::Pass } else { Status::Fail },
        lhs: Some(Side::Text(format!("{held} of {} trials hold exactly", e.trials))),
        rhs: Some(Side::Text(format!("{:?} identity, exact equality", e.group).to_lowercase())),
        max_dev: Some(if e.passed { 0.0 } else { 1.0 }),
        detail: match (&e.failure, e.empty_block) {
            (Some(f), _) => Some(f.clone()),
            (None, true) => Some("a parameter block is empty at this point".into()),
            (None, false) => None,
        },
    }
}

pub fn jacobian_case(j: &JacobianReport) -> Case {
    Case {
        id: format!("jacobians/{}/{}/{}", j.id, j.semantics, slug(&j.params)),
        anchor: j.anchor.clone(),
        status: if j.passed { Status::Pass } else { Status::Fail },
        lhs: j.observed.map(Side::Int),
        rhs: Some(Side::Int(j.expected)),
        max_dev: j.observed.map(|o| (o - j.expected).abs() as f64),
        detail: j.failure.clone().or_else(|| Some(format!("{} trials", j.trials))),
    }
}

pub fn catalog_cases(run: &Run, mode: Mode) -> Result<Vec<Case>> {
    Ok(run_catalog(&options(run, mode))?.iter().map(entry_case).collect())
}

pub fn jacobian_cases(run: &Run, mode: Mode) -> Result<Vec<Case>> {
    Ok(run_jacobians(&options(run, mode))?.iter().map(jacobian_case).collect())
}
