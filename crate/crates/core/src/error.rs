use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("genus {0} exceeds the supported maximum of {max}", max = crate::exterior::MAX_GENUS)]
    GenusTooLarge(usize),
    #[error("degree {degree} out of range for genus {genus}")]
    DegreeOutOfRange { degree: usize, genus: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("vector not in span of basis: {0}")]
    NotInSpan(String),
    #[error("not integral: {0}")]
    NotIntegral(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
