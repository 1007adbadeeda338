use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("scaling factor must be nonzero")]
    ZeroScale,
    #[error("negative-degree term t^{0} cannot be truncated")]
    NegativeDegree(i64),
    #[error("matrix is not invertible over the Laurent ring")]
    NotInvertible,
    #[error("element is not a 1-cocycle")]
    NotCocycle,
    #[error("the points are not isomorphic")]
    NotIsomorphic,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("point lies on the quadric q0 = 0")]
    OnQuadric,
    #[error("malformed ray chain: {0}")]
    MalformedChain(String),
    #[error("fan is not of the expected shape: {0}")]
    UnexpectedFan(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
