use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field: {0}")]
    Field(String),
    #[error("enumeration of {size} elements exceeds the bound {bound}")]
    TooLarge { size: u128, bound: u128 },
    #[error("twist mismatch: {0}")]
    Shape(String),
    #[error("not a subbundle: {0}")]
    NotSaturated(String),
    #[error("invalid hermitian data: {0}")]
    Hermitian(String),
    #[error("matrix is singular")]
    Singular,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invariant `{lemma}` failed: {detail}")]
    Invariant { lemma: &'static str, detail: String },
    #[error("instance file: {path}: {msg}")]
    Instance { path: String, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
