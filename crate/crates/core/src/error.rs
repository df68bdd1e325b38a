use thiserror::Error;

/// Errors raised by the exact and numeric routines in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("shape mismatch: {left}x{left} vs {right}x{right}")]
    ShapeMismatch { left: usize, right: usize },

    #[error("not invertible over integers: constant term is {0}")]
    NotInvertible(String),

    #[error("matrix series constant term is not the identity")]
    ConstantNotIdentity,

    #[error("determinant dimension {dim} exceeds bound {bound}; raise it with --det-bound")]
    DetBound { dim: usize, bound: usize },

    #[error("substitution exponent must be positive, got {0}")]
    BadSubstitution(i64),

    #[error("series has nonzero constant term {0}")]
    NonzeroConstant(String),

    #[error("series constant term must be 1, got {0}")]
    ConstantNotOne(String),

    #[error("input is not a plethystic exponential of an integer series (degree {degree})")]
    NotPlethystic { degree: usize },

    #[error("path cap of {cap} exceeded at weight {weight}")]
    PathCap { cap: usize, weight: usize },

    #[error("enumeration cap of {cap} exceeded at weight {weight}")]
    EnumerationCap { cap: usize, weight: usize },

    #[error("quiver is disconnected")]
    Disconnected,

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid datum: {0}")]
    InvalidDatum(String),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
