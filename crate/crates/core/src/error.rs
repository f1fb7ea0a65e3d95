use thiserror::Error;

/// Error type shared by every fallible operation in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(i64, i64),
    #[error("form of degree {degree} is not top degree on {n_vars} variables")]
    NotTopDegree { degree: i64, n_vars: usize },
    #[error("bad degree {0}")]
    BadDegree(i64),
    #[error("slot mismatch: expected {expected}, found {found}")]
    SlotMismatch { expected: String, found: String },
    #[error("module carries no Peiffer lifting")]
    NoLifting,
    #[error("missing pairing: {0}")]
    MissingPairing(String),
    #[error("generalized forms carry different derivative constants")]
    ConstantMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("module is not balanced: {0}")]
    NotBalanced(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("generator is not nilpotent")]
    NotNilpotent,
    #[error("parse error at {path}: {message}")]
    ParseError { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
