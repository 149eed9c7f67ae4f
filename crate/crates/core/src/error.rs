use thiserror::Error;

/// Errors produced by the evaluators, the summation engine and the
/// verification driver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("rational overflow in {0}")]
    Overflow(&'static str),

    #[error("unknown identity id `{0}`")]
    UnknownId(String),

    #[error("validity constraint violated: {0}")]
    ValidityViolation(String),

    #[error("truncation too small: tail bound {bound:.3e} exceeds tolerance {tolerance:.3e}")]
    TruncationTooSmall { bound: f64, tolerance: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(op: &'static str, detail: impl Into<String>) -> Result<T> {
    Err(Error::Domain {
        op,
        detail: detail.into(),
    })
}
