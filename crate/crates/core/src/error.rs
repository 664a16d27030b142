use thiserror::Error;

/// Errors produced by tower computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("value is NaN")]
    NotANumber,

    #[error("base must be strictly positive and finite, got {0}")]
    InvalidBase(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("word supplies {available} signs but {needed} were requested")]
    InsufficientSigns { needed: usize, available: usize },

    #[error("base out of range: {0}")]
    OutOfRange(String),

    #[error("no two-cycle: {0}")]
    NoCycle(String),

    #[error("root bracket [{lo}, {hi}] does not contain a sign change")]
    NoBracket { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
