use thiserror::Error;

use crate::model::Item;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty database")]
    EmptyDatabase,
    #[error("transaction {tid}: duplicate item {item}")]
    DuplicateItemInTransaction { tid: u64, item: Item },
    #[error("line {line}: bad token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("input is not valid UTF-8")]
    InvalidUtf8,
    #[error("invalid item {0:?}")]
    InvalidItem(String),
    #[error("transaction {0} is empty")]
    EmptyTransaction(u64),
    #[error("duplicate transaction id {0}")]
    DuplicateTid(u64),
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("invalid threshold {0:?}")]
    InvalidThreshold(String),
    #[error("antecedent has zero support")]
    ZeroAntecedentSupport,
    #[error("alphabet of {0} items is too large for exhaustive enumeration")]
    AlphabetTooLarge(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no sensitive items given")]
    EmptySensitiveSet,
    #[error("sensitive item {0} listed twice")]
    DuplicateSensitiveItem(Item),
    #[error("database shape mismatch: {0}")]
    ShapeMismatch(String),
}
