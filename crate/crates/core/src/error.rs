use thiserror::Error;

use crate::structure::Diagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid structure: {0}")]
    Invalid(#[from] Diagnostic),

    #[error("element {element} is out of range for a universe of size {size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("subset is not closed: {0}")]
    NotClosed(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("subuniverse belongs to a different parent structure")]
    ParentMismatch,

    #[error("partition is not a congruence: {0}")]
    NotCongruence(String),

    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("structure of size {size} exceeds the configured bound of {bound}")]
    SizeBound { size: usize, bound: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("law violation: {0}")]
    LawViolation(String),

    #[error("unknown structure family: {0}")]
    UnknownFamily(String),

    #[error("{0}")]
    Format(String),
}
