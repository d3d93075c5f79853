//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    /// Arithmetic between Q(zeta_a) and Q(zeta_b) is only defined when one
    /// conductor divides the other.
    #[error("conductor mismatch: neither {0} nor {1} divides the other")]
    ConductorMismatch(u32, u32),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("zeta^{0} is not a primitive {1}-th root of unity")]
    NotPrimitiveRoot(i64, usize),
    #[error("declared group-like set is not abelian")]
    NotAbelian,
    #[error("H is not free over k[A]: quotient has dimension {got}, expected {expected}")]
    NotFree { expected: usize, got: usize },
    #[error("invalid gauge map: {0}")]
    InvalidGauge(String),
    #[error("product leaves the subspace: {0}")]
    NotClosed(String),
    #[error("{d} does not divide {n}")]
    NotDivisor { d: usize, n: usize },
    #[error("algebra is not semisimple")]
    NotSemisimple,
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("verification mode does not match the candidate family: {0}")]
    ModeMismatch(String),
    #[error("group datum is invalid: {0}")]
    DatumInvalid(String),
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("search bound exceeded: {0}")]
    SearchBoundExceeded(String),
    #[error("failed to split the center over the working field: {0}")]
    SplitFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
