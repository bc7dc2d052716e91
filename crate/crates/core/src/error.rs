use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("unsupported root system: {0}")]
    UnsupportedFamily(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not a root of this system: {0}")]
    NotARoot(String),
    #[error("simple root index {index} out of range for rank {rank}")]
    BadSimpleIndex { index: usize, rank: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error(transparent)]
    Roots(#[from] RootSystemError),
    #[error("root support is empty or contains roots outside the positive m-part")]
    InvalidGamma,
    #[error("no superminimal root exists in the given support")]
    NotFound,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("delta has a shape not covered by this case analysis: {0}")]
    UnsupportedDelta(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Roots(#[from] RootSystemError),
    #[error("coefficients a and b are both zero")]
    DegenerateCoefficients,
    #[error("root {0} does not lie in the k-part")]
    NotInK(String),
    #[error("unknown identity suite: {0}")]
    UnknownSuite(String),
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("root {0} is not in the positive m-part")]
    NotInM(String),
}
