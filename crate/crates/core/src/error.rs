//! Error type shared by all fallible operations in the crate.

use thiserror::Error;

/// Errors produced by parsers, constructors and the bijection algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A value sequence is not a permutation of {{1..n}}.
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    /// A family constructor or conversion received inconsistent data.
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    /// A registry violates its structural preconditions.
    #[error("invalid registry: {0}")]
    InvalidRegistry(String),
    /// A pairing sequence or decorated Dyck path violates an invariant.
    #[error("invalid pairing data at index {index}: {message}")]
    InvalidPairing {
        /// 1-based index of the offending entry.
        index: usize,
        /// Description of the violated invariant.
        message: String,
    },
    /// A (pairing sequence, red count) combination admits no primitive permutation.
    #[error("invalid primitive data: {0}")]
    InvalidPrimitive(String),
    /// A decimal code violates one of its axioms.
    #[error("invalid decimal code: {0}")]
    InvalidCode(String),
    /// Malformed multiparenthesized level data.
    #[error("invalid multiparenthesized form: {0}")]
    InvalidMultiParen(String),
    /// An enumeration exceeded its configured budget.
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    /// A generic domain error (bad argument combination).
    #[error("{0}")]
    Domain(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
