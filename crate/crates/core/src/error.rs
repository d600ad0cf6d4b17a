use std::fmt;

use thiserror::Error;

/// Failure witness reported by the structure predicates and carried by
/// structure errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Witness {
    /// The value at n = 1 is wrong for the requested class.
    AtOne,
    /// A coprime pair `(m, n)` with `m < n` violating the functional equation.
    Pair(usize, usize),
    /// A prime power `p^k` violating the complete-multiplicativity or
    /// complete-additivity rule.
    PrimePower { p: usize, k: u32 },
    /// An index where a value that must vanish does not.
    Index(usize),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::AtOne => write!(f, "n=1"),
            Witness::Pair(m, n) => write!(f, "({m}, {n})"),
            Witness::PrimePower { p, k } => write!(f, "p={p}, k={k}"),
            Witness::Index(n) => write!(f, "n={n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-finite value {0}")]
    NonFinite(String),
    #[error("invalid bound {0}: the bound must be at least 1")]
    InvalidBound(usize),
    #[error("index {index} is outside 1..={bound}")]
    OutOfRange { index: usize, bound: usize },
    #[error("{index} is outside the accepted range {range}")]
    Range { index: usize, range: &'static str },
    #[error("bound mismatch: {left} vs {right}")]
    BoundMismatch { left: usize, right: usize },
    #[error("not invertible: value at index 1 is {value}")]
    NonInvertible { value: String },
    #[error("{operation} is not supported by the {backend} backend")]
    UnsupportedBackend {
        operation: String,
        backend: &'static str,
    },
    #[error("{operation} requires {expected}, found a(1) = {found}")]
    Domain {
        operation: &'static str,
        expected: &'static str,
        found: String,
    },
    #[error("input is not {class}: witness {witness}")]
    Structure { class: &'static str, witness: Witness },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("format error at line {line}: {message}")]
    Format { line: u64, message: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("invalid number `{0}`")]
    ParseNumber(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
