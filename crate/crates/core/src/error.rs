use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element does not belong to the group: {0}")]
    InvalidElement(String),
    #[error("duplicate element in alphabet: {0}")]
    DuplicateElement(String),
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("sequence is not a block (sum is nonzero)")]
    NotZeroSum,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("too many factorizations (limit {0})")]
    TooManyFactorizations(usize),
    #[error("search space too large: {0}")]
    SearchTooLarge(String),
    #[error("invalid transfer map: {0}")]
    InvalidMap(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("atom not in atom set")]
    UnknownAtom,
}

pub type Result<T> = std::result::Result<T, Error>;
