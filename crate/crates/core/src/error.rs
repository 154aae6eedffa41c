use crate::syntax::{ParseError, Pred};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
    #[error("a signature needs at least one relation symbol")]
    EmptyRelationalSignature,
    #[error("{pred} takes {expected} argument(s), found {found}")]
    Arity {
        pred: Pred,
        expected: usize,
        found: usize,
    },
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),
    #[error("constant {constant} is not available on {algebra}")]
    UnsupportedConstant { algebra: String, constant: String },
    #[error("unknown preset structure {0:?}")]
    UnknownPreset(String),
    #[error("unknown axiom system {0:?}")]
    UnknownSystem(String),
    #[error("size {size} exceeds the configured bound {bound} for {what}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("{0}")]
    Precondition(String),
    #[error("variable {0} has no value")]
    UnboundVariable(String),
    #[error("constant {0} is not interpreted")]
    MissingConstant(String),
    #[error("resource budget exhausted: {0}")]
    Budget(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
