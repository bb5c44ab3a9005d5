use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("NonOddPrime: {0} is not an odd prime")]
    NonOddPrime(u64),
    #[error("PrecisionTooSmall: precision {0} is below the minimum of 6")]
    PrecisionTooSmall(u32),
    #[error("PrecisionTooLarge: p^{0} does not fit in 63 bits")]
    PrecisionTooLarge(u32),
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("PrecisionLoss: {0}")]
    PrecisionLoss(String),
    #[error("NotIntegral: valuation {0} is negative")]
    NotIntegral(i32),
    #[error("BadDelta: {0}")]
    BadDelta(String),
    #[error("NotNormOne")]
    NotNormOne,
    #[error("LevelTooDeep: level {level} exceeds precision {precision} minus 2")]
    LevelTooDeep { level: u32, precision: u32 },
    #[error("NotAField: operation requires a quadratic field")]
    NotAField,
}

pub type Result<T> = std::result::Result<T, PadicError>;
