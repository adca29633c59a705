use thiserror::Error;

use crate::pair::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("invalid partial pair: {0}")]
    InvalidPair(ValidationReport),

    #[error("union conflict: {0}")]
    UnionConflict(String),

    #[error("automorphism search is bounded to {limit} atoms, pair has {atoms}")]
    TooManyAtoms { atoms: usize, limit: usize },

    #[error("environment binds `{var}` to {element}, which is not in the carrier")]
    EnvironmentOutsideCarrier { var: String, element: String },

    #[error("completion needs {predicted} elements, above the ceiling of {ceiling}")]
    CeilingExceeded { predicted: String, ceiling: u64 },

    #[error("evaluation exhausted its budget of {0} steps")]
    EvaluationBudget(u64),

    #[error("{element} is not a member of the interpretation up to rank {bound}")]
    NotFound { element: String, bound: u32 },

    #[error("coding does not extend the pair at key {0}")]
    NotAnExtension(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("{0} is not in the carrier of the minimum model")]
    NotInCarrier(u128),

    #[error("value out of supported range: {0}")]
    Overflow(String),

    #[error("{0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
