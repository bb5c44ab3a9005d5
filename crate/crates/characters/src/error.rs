use lg_padic::PadicError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CharError {
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("ZeroArgument: characters of the multiplicative group need a nonzero argument")]
    ZeroArgument,
    #[error("NotTrivialOnF: {0}")]
    NotTrivialOnF(String),
    #[error("BaseMismatch: {0}")]
    BaseMismatch(String),
    #[error("NotAField: this character lives on a quadratic field")]
    NotAField,
    #[error("BadSpec: {0}")]
    BadSpec(String),
    #[error("internal: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, CharError>;
