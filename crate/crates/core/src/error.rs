use thiserror::Error;

/// Errors shared across the crate. Every fallible certification path reports
/// *why* it could not decide instead of guessing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not dyadic: {0}")]
    NotDyadic(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A finite-depth bit accessor ran out before the search succeeded.
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    /// A stage-indexed search exceeded the available stage depth.
    #[error("insufficient depth: {0}")]
    InsufficientDepth(String),

    /// Two enclosed quantities did not separate within the refinement cap.
    #[error("undecided comparison after {0} refinements")]
    Undecided(u32),

    #[error("construction error: {0}")]
    Construction(String),

    #[error("unsupported T: {0}")]
    UnsupportedT(String),

    #[error("prefix-free violation: {0:?} is a prefix of {1:?}")]
    NotPrefixFree(String, String),

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
