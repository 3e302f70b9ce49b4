use thiserror::Error;

/// Errors raised by the numerical routines and experiment harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative evaluation could not reach the requested accuracy.
    #[error("accuracy error: requested {requested:e}, achieved bound {achieved:e}")]
    Accuracy { requested: f64, achieved: f64 },

    /// The supremum of an envelope is still increasing at the end of the scan.
    #[error("unbounded supremum: envelope still rising at v = {v_max:e}")]
    UnboundedSupremum { v_max: f64 },

    /// Decay exponent requested outside `1/lambda > 1/p - 1/q`, or indices out of range.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// A checked inequality or invariant failed; `witness` is machine-readable.
    #[error("invariant failure: {message} (witness: {witness})")]
    InvariantFailure { message: String, witness: String },

    /// Malformed configuration, profile or catalog input.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
