use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("polynomial degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: String },

    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("map does not preserve the ideal in degree {degree}")]
    NotInvariant { degree: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("elements live in different groups: N({0},{1}) vs N({2},{3})")]
    AmbientMismatch(usize, usize, usize, usize),

    #[error("value is not integral: {0}")]
    NotIntegral(String),

    #[error("certificate verification failed: {0}")]
    Verification(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
