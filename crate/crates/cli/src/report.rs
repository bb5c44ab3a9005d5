//! The JSON report: the embedded configuration and, per suite, the cases in
//! id order.

use std::collections::BTreeMap;
use std::path::Path;

use lg_symbolic::{lr_deviation, lr_equal, LaurentJson, LaurentRational};
use serde::{Deserialize, Serialize};

use crate::anchors::anchors;
use crate::config::RunConfig;
use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One side of a checked statement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Side {
    Laurent(LaurentJson),
    Int(i64),
    Text(String),
}

impl Side {
    pub fn lr(v: &LaurentRational) -> Self {
        Side::Laurent(v.to_json())
    }

    /// The side as it is printed by `explain`.
    pub fn render(&self) -> String {
        match self {
            Side::Laurent(j) => match LaurentRational::from_json(j) {
                Ok(r) => format!("{r}\n    {}", serde_json::to_string(j).expect("plain data")),
                Err(e) => format!("unreadable rational function: {e}"),
            },
            Side::Int(v) => v.to_string(),
            Side::Text(t) => t.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub lhs: Option<Side>,
    pub rhs: Option<Side>,
    pub max_dev: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl Case {
    fn new(id: String, kind: &str) -> Self {
        Self { id, anchor: anchors().kind(kind).to_string(), status: Status::Fail, lhs: None, rhs: None, max_dev: None, detail: None }
    }

    /// A comparison of two rational functions of X.
    pub fn compare(id: String, kind: &str, lhs: &LaurentRational, rhs: &LaurentRational, tol: f64) -> Self {
        let mut c = Self::new(id, kind);
        c.status = if lr_equal(lhs, rhs, tol) { Status::Pass } else { Status::Fail };
        c.max_dev = finite(lr_deviation(lhs, rhs));
        c.lhs = Some(Side::lr(lhs));
        c.rhs = Some(Side::lr(rhs));
        c
    }

    /// A case that could not be evaluated.
    pub fn error(id: String, kind: &str, err: impl std::fmt::Display) -> Self {
        let mut c = Self::new(id, kind);
        c.detail = Some(err.to_string());
        c
    }

    /// A case decided by a pointwise deviation.
    pub fn deviation(id: String, kind: &str, lhs: Side, rhs: Side, dev: f64, tol: f64) -> Self {
        let mut c = Self::new(id, kind);
        c.status = if dev < tol { Status::Pass } else { Status::Fail };
        c.max_dev = finite(dev);
        c.lhs = Some(lhs);
        c.rhs = Some(rhs);
        c
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    /// Fails the case with a reason, keeping the sides.
    pub fn failing(mut self, d: impl Into<String>) -> Self {
        self.status = Status::Fail;
        self.detail = Some(d.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub cases: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub summary: Summary,
    pub suites: BTreeMap<String, Vec<Case>>,
}

impl Report {
    pub fn new(config: RunConfig, suites: BTreeMap<String, Vec<Case>>) -> Self {
        let cases = suites.values().map(Vec::len).sum();
        let failed = suites.values().flatten().filter(|c| !c.passed()).count();
        Self { config, summary: Summary { cases, failed }, suites }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn case(&self, id: &str) -> Option<&Case> {
        self.suites.values().flatten().find(|c| c.id == id)
    }

    pub fn cases(&self) -> impl Iterator<Item = &Case> {
        self.suites.values().flatten()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is plain data");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|source| CliError::Write { path: dir.display().to_string(), source })?;
        }
        std::fs::write(path, self.to_json()).map_err(|source| CliError::Write { path: path.display().to_string(), source })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::BadReport(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::BadReport(format!("{}: {e}", path.display())))
    }
}
