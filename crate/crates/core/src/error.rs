use thiserror::Error;

use crate::semiring::{Ext, Semiring};

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid value `{0}`")]
    InvalidValue(String),
    #[error("unknown semiring `{0}`")]
    UnknownSemiring(String),
    #[error("values from different semirings ({0} and {1})")]
    MixedSemirings(Semiring, Semiring),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("word of length {len} exceeds truncation length {max_len}")]
    WordTooLong { len: usize, max_len: usize },
    #[error("not stabilized after {0} iterations")]
    NotStabilized(usize),
    #[error("not in Greibach normal form: {0}")]
    NotGnf(String),
    #[error("shape violation: {0}")]
    Shape(String),
    #[error("component has nonzero empty-word coefficient {0}")]
    EpsilonCoefficient(Ext),
    #[error("{0} semiring is not supported here: {1}")]
    Unsupported(Semiring, String),
    #[error("invalid lasso word: {0}")]
    InvalidLasso(String),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
