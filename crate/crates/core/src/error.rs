use thiserror::Error;

/// Errors raised by the algebraic constructions in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("shift vector {index} is zero; augmentation factors need nonzero exponents")]
    ZeroShift { index: usize },

    #[error("terms do not share a common direction; decompose along basis directions first")]
    MixedDirections,

    #[error("incompatible simple algebra: {0}")]
    IncompatibleAlgebra(String),

    #[error("invalid simple algebra data: {0}")]
    InvalidAlgebra(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("empty start vector")]
    EmptyStart,

    #[error("representation construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
