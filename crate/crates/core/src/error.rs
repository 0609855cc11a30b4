use thiserror::Error;

/// Errors raised by the algebraic routines and the expression parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The requested base field / torsion combination is not supported.
    #[error("unsupported: {0}")]
    Scope(String),

    /// An input that must be nonzero was zero.
    #[error("zero input: {0}")]
    ZeroInput(&'static str),

    /// Operands live over different base fields or have different torsion.
    #[error("incompatible operands: {0}")]
    Mismatch(String),

    /// A symbol entry is not a unit at the requested point.
    #[error("not symbol-regular at {point}: {detail}")]
    NotSymbolRegular { point: String, detail: String },

    /// A documented precondition of an operation was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Syntax error in a class or function expression, at a byte offset.
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    /// Well-formed expression with an invalid value (zero entry, bad denominator).
    #[error("invalid expression: {0}")]
    Semantic(String),

    /// An internal consistency check failed. Always a bug.
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
