use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coefficients, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("non-finite coefficient at index {0}")]
    NonFinite(usize),

    #[error("invalid block range [{lo}, {hi}) for {len} coefficients")]
    InvalidRange { lo: usize, hi: usize, len: usize },

    #[error("reflection across the zero vector is undefined")]
    ZeroReflection,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("evaluation point {0} lies outside [0, 1]")]
    OutOfDomain(f64),

    #[error("block plan does not match the displacement: {0}")]
    PlanMismatch(String),

    #[error("truncation too short to meet the tail schedule at block {block}")]
    TruncationInsufficient { block: usize },

    #[error("sample is empty")]
    EmptySample,

    #[error("every draw in the sample is censored")]
    AllCensored,

    #[error("law `{0}` has no cumulative distribution function")]
    NotADistribution(String),

    #[error("config error at `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("malformed path dump: {0}")]
    Dump(String),

    #[error("malformed results table: {0}")]
    Table(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
