use thiserror::Error;

use crate::chain::Bidegree;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed token in PD or manifest text.
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    /// Well-formed text that does not describe a valid oriented diagram.
    #[error("invalid diagram: {0}")]
    Validation(String),

    /// An operation was called outside of its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input exceeds what the bit-packed state encoding can represent.
    #[error("diagram too large: {0}")]
    TooLarge(String),

    #[error("cube faces do not commute: directions {first} and {second} at vertex {vertex:#b}")]
    FaceCommutation {
        vertex: u32,
        first: usize,
        second: usize,
    },

    #[error("d∘d ≠ 0 at bidegree {0:?}")]
    ComplexInvalid(Bidegree),

    #[error("map does not commute with differentials at bidegree {0:?}")]
    NotAChainMap(Bidegree),

    #[error("inconsistent homology basis at bidegree {0:?}: {1}")]
    InconsistentBasis(Bidegree, String),

    #[error("shape mismatch: {0}")]
    Shape(String),
}
