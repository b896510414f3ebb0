use thiserror::Error;

use crate::field::Mode;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot mix {left:?} and {right:?} scalars in one expression")]
    ModeMismatch { left: Mode, right: Mode },

    #[error("division by zero in exact arithmetic")]
    DivisionByZero,

    #[error("dimension mismatch: {op} got {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("input vectors are linearly dependent (pivot norm {pivot:e})")]
    RankDeficient { pivot: f64 },

    #[error("eigenvalue clusters {a} and {b} are too close to separate")]
    ClusterAmbiguity { a: f64, b: f64 },

    #[error("complex quadric requires m >= 3, got m = {0}")]
    DimensionTooSmall(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
