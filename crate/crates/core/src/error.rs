use thiserror::Error;

/// Errors produced by the library.
///
/// Exhaustive search helpers refuse inputs above their size caps instead of
/// silently running for hours; those show up as [`Error::CapExceeded`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid edge ({u}, {v}): {reason}")]
    InvalidEdge { u: usize, v: usize, reason: &'static str },

    #[error("{what} has size {size}, exceeding the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
