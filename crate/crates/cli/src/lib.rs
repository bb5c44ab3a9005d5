//! Configuration-driven verification runs: load a run file, execute the
//! selected suites on the worker pool, write a deterministic JSON report, and
//! explain individual cases from a report.

pub mod anchors;
pub mod config;
pub mod error;
pub mod explain;
pub mod report;
pub mod suites;

use std::path::{Path, PathBuf};

pub use config::{RunConfig, SUITES};
pub use error::{CliError, ConfigError, Result};
pub use lg_par::Mode;
pub use report::{Case, Report, Side, Status};

/// Exit codes of `verify`.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Restricts the configured suites to `only` (when non-empty) and sets the
/// seed, then validates.
pub fn prepare(mut config: RunConfig, only: &[String], seed: Option<u64>) -> std::result::Result<config::Run, ConfigError> {
    for s in only {
        if !SUITES.contains(&s.as_str()) {
            return Err(ConfigError::UnknownSuite(s.clone()));
        }
    }
    if !only.is_empty() {
        config.suites = SUITES.iter().filter(|s| only.iter().any(|o| o == *s)).map(|s| s.to_string()).collect();
    }
    if let Some(seed) = seed {
        config.seed = seed;
    }
    config::validate(config)
}

/// Runs a validated configuration.
pub fn execute(run: &config::Run, mode: Mode) -> Result<Report> {
    let suites = suites::run_suites(run, mode)?;
    Ok(Report::new(run.config.clone(), suites))
}

/// Where the report goes: the explicit path, else `report.json` in
/// `REPORT_DIR` (or the working directory).
pub fn report_path(explicit: Option<&Path>, report_dir: Option<&str>) -> PathBuf {
    match explicit {
        Some(p) => p.to_path_buf(),
        None => Path::new(report_dir.unwrap_or(".")).join("report.json"),
    }
}
