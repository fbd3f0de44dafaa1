use thiserror::Error;

/// Errors raised by structures, reductions and file parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("scale mismatch: expected {expected}, got {got}")]
    ScaleMismatch { expected: i64, got: i64 },

    #[error("arithmetic overflow")]
    Overflow,

    #[error("unknown entry key {0}")]
    UnknownEntry(u64),

    #[error("invalid box: {0}")]
    InvalidBox(String),

    #[error("capacity {0} exceeded")]
    CapacityExceeded(usize),

    #[error("not present: {0}")]
    Absent(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid trace at op {index}: {reason}")]
    InvalidTrace { index: usize, reason: String },

    #[error("compressed grid has {0} cells, limit is 1e8")]
    GridTooLarge(u128),

    #[error("phase {0} left the target in a different state")]
    PhaseNotRestored(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

#[allow(dead_code)]
pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
