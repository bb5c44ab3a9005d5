//! Human-readable account of one case of a report.

use std::fmt::Write;

use crate::anchors::{anchors, suite_of};
use crate::error::{CliError, Result};
use crate::report::{Report, Status};

/// The anchor line as printed; tests compare it against the manifest.
pub fn anchor_line(anchor: &str) -> String {
    format!("anchor: {anchor}")
}

pub fn explain(report: &Report, case_id: &str) -> Result<String> {
    let case = report.case(case_id).ok_or_else(|| CliError::UnknownCase(case_id.to_string()))?;
    let a = anchors();
    let anchor = a.for_case(case_id).ok_or_else(|| CliError::BadReport(format!("{case_id} has no manifest anchor")))?;
    if anchor != case.anchor {
        return Err(CliError::BadReport(format!("anchor of {case_id} differs from the manifest")));
    }
    let suite = suite_of(case_id);
    let cfg = &report.config;
    let mut out = String::new();
    let status = match case.status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
    };
    writeln!(out, "case: {}", case.id).unwrap();
    writeln!(out, "status: {status}").unwrap();
    writeln!(out, "{}", anchor_line(anchor)).unwrap();
    writeln!(out, "conventions: {}", a.conventions(suite).unwrap_or("none recorded")).unwrap();
    if !matches!(suite, "matrix-catalog" | "jacobians") {
        writeln!(out, "field: Q_{} at precision {}, ψ of conductor exponent {}, tol {:e}", cfg.field.p, cfg.field.precision, cfg.psi.conductor_exponent, cfg.tol)
            .unwrap();
    } else {
        writeln!(out, "trials: {}, seed {}", cfg.trials, cfg.seed).unwrap();
    }
    let side = |s: &Option<crate::report::Side>| s.as_ref().map_or("(not evaluated)".to_string(), |s| s.render());
    writeln!(out, "lhs: {}", side(&case.lhs)).unwrap();
    writeln!(out, "rhs: {}", side(&case.rhs)).unwrap();
    if let Some(d) = case.max_dev {
        writeln!(out, "max deviation: {d:e}").unwrap();
    }
    if let Some(d) = &case.detail {
        writeln!(out, "detail: {d}").unwrap();
    }
    Ok(out)
}
