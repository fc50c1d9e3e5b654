//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("enumeration cap of {0} elements exceeded")]
    CapExceeded(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("field extension degree {0} out of range (1..=32)")]
    DegreeOutOfRange(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("invalid action table: {0}")]
    InvalidAction(String),
    #[error("splitting field too small: {0}")]
    SplittingFieldTooSmall(String),
    #[error("subgroup is not strongly embedded")]
    NotStronglyEmbedded,
    #[error("combinatorial cross-check failed: {0}")]
    InconsistentCombinatorics(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
