use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("BadSize: {0}")]
    BadSize(String),
    #[error("NotInSourceGroup: {0}")]
    NotInSourceGroup(String),
    #[error("NotStabilizing: {0}")]
    NotStabilizing(String),
    #[error("Singular: {0}")]
    Singular(String),
    #[error("manifest: {0}")]
    Manifest(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;
