use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    InvalidPrime(u64),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("dimension vector has length {found}, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("sequence has {found} layers, expected {expected}")]
    LayerCountMismatch { expected: usize, found: usize },
    #[error("top vector is not bounded by the dimension vector")]
    NotBounded,
    #[error("semisimple sequences have different total dimension vectors")]
    MismatchedTotals,
    #[error("semisimple sequence is not realizable")]
    NotRealizable,
    #[error("quiver has an oriented cycle")]
    CyclicQuiver,
    #[error("algebra is not local: {0}")]
    NotLocal(String),
    #[error("operation requires Loewy bound {expected}, got {found}")]
    WrongLoewyBound { expected: usize, found: usize },
    #[error("representations live over different algebras or primes")]
    AlgebraMismatch,
    #[error("parameter assignment does not cover x{0}")]
    MissingParameter(usize),
    #[error("specialization retry budget ({0}) exhausted without matching layering")]
    RetryBudgetExhausted(usize),
    #[error("filtration search exceeded its cap of {0} nodes")]
    SearchCapExceeded(u64),
    #[error("enumeration of {count} items exceeds the cap of {cap}")]
    EnumerationCapExceeded { count: u128, cap: u128 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
