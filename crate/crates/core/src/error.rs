use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range for dimension {bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("degree {degree} out of range for dimension {n}")]
    DegreeOutOfRange { degree: usize, n: usize },
    #[error("matrix has nonzero trace {0}")]
    NonzeroTrace(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("elements belong to different algebras")]
    MixedAlgebras,
    #[error("polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("interval endpoint {0} is a root")]
    EndpointIsRoot(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
