use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the domain where a formula or model applies.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} out of range for factor {factor} (dimension {dim})")]
    IndexOutOfRange {
        factor: &'static str,
        index: usize,
        dim: usize,
    },

    #[error("factor mismatch: {0}")]
    FactorMismatch(String),

    #[error("state not normalized: squared norm {0}")]
    NotNormalized(f64),

    #[error("basis is not orthonormal (max deviation {0:.3e})")]
    NotOrthonormal(f64),

    #[error("invalid amplitude model: {0}")]
    InvalidModel(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
