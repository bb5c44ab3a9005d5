use thiserror::Error;

/// Problems with the run configuration. All of them end the run with exit code 2.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("ParseError: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] lg_padic::PadicError),
    #[error(transparent)]
    Character(#[from] lg_chars::CharError),
    #[error("Tolerance: tol = {0:e} is outside [1e-12, 1e-6]")]
    Tolerance(f64),
    #[error("UnknownSuite: {0}")]
    UnknownSuite(String),
    #[error("MissingInput: suite {suite} needs {what}")]
    MissingInput { suite: String, what: String },
    #[error("BadEtale: {0}")]
    BadEtale(String),
    #[error("BadSchwartz: {0}")]
    BadSchwartz(String),
    #[error("BadMatrixParams: {0}")]
    BadMatrixParams(String),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("UnknownCase: no case {0:?} in the report")]
    UnknownCase(String),
    #[error("BadReport: {0}")]
    BadReport(String),
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("catalog: {0}")]
    Catalog(#[from] lg_groups::GroupError),
}

pub type Result<T> = std::result::Result<T, CliError>;
