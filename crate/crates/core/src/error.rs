//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by parsing, validation and the decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed text input, positioned at a 1-based line and column.
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// A signature with `n < 2` or `r < 1`.
    #[error("invalid signature n={n}, r={r}")]
    Signature { n: usize, r: usize },
    /// A generator or letter index outside the signature.
    #[error("token {0} is out of range for the signature")]
    TokenRange(String),
    /// A row that is not an Omega-word.
    #[error("not a valid word: {0}")]
    InvalidRow(String),
    /// A set of words that is not a (free) basis.
    #[error("not a basis: {0}")]
    NotABasis(String),
    /// A word that was expected to be a leaf of a basis.
    #[error("{0} is not a leaf of the basis")]
    NotALeaf(String),
    /// Operands over different signatures.
    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(String, String),
    /// The configured step budget ran out.
    #[error("step limit of {0} exceeded")]
    StepLimit(usize),
    /// An operation whose precondition does not hold.
    #[error("{0}")]
    Precondition(String),
}

/// Result alias for this crate.
pub type Result<T> = std::result::Result<T, Error>;
