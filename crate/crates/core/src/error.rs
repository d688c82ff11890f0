use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index out of range: {0}")]
    Range(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    /// Every sampled phase gave a vanishing slope.
    #[error("no phase signal: the observable does not depend on the phase anywhere in (0, pi)")]
    NoSignal,

    #[error("dimension guard: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
