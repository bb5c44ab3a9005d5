use lg_chars::CharError;
use lg_padic::PadicError;
use lg_symbolic::SymbolicError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TateError {
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error("NonStabilizingShells: {0}")]
    NonStabilizingShells(String),
    #[error("DegenerateTestFunction: both integrals vanish identically")]
    DegenerateTestFunction,
    #[error("NotConstant: {0}")]
    NotConstant(String),
    #[error("shape: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, TateError>;
