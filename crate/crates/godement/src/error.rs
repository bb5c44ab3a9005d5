use lg_chars::CharError;
use lg_padic::PadicError;
use lg_symbolic::SymbolicError;
use lg_tate::TateError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GodementError {
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Tate(#[from] TateError),
    #[error("NotUnitary: {0}")]
    NotUnitary(String),
    #[error("NotDecomposable: {0}")]
    NotDecomposable(String),
    #[error("NonStabilizingShells: {0}")]
    NonStabilizingShells(String),
    #[error("UnstableLevel: E¹ sum changes between levels {0} and {}", .0 + 1)]
    UnstableLevel(u32),
    #[error("ZeroDenominator: the integral vanishes for this test function")]
    ZeroDenominator,
    #[error("NormalizationMismatch: {0}")]
    NormalizationMismatch(String),
    #[error("shape: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, GodementError>;
