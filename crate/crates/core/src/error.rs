use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} rays, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("ray index {index} out of range 1..={n}")]
    RayIndex { index: usize, n: usize },

    #[error("invalid injection: {0}")]
    InvalidInjection(String),

    #[error("zero character (all coefficients equal)")]
    ZeroCharacter,

    #[error("character is not in standard form: {0}")]
    NotStandardForm(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("region seed rejected: {0}")]
    BadSeed(String),

    #[error("region exceeds the cap of {0} vertices")]
    RegionTooLarge(usize),

    #[error("unknown vertex {0}")]
    UnknownVertex(u32),

    #[error("vertex {0} is on the truncation boundary")]
    BoundaryVertex(u32),

    #[error("inconsistent complex: {0}")]
    InconsistentComplex(String),

    #[error("arithmetic overflow in integer reduction")]
    Overflow,

    #[error("not a chain map: {0}")]
    NotChainMap(String),

    #[error("cover does not cover the region: {0}")]
    NotACover(String),

    #[error("witness check failed: {0}")]
    Witness(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
