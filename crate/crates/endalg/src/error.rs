//! Error types shared across the library.

use thiserror::Error;

/// Anything that can go wrong while building or analyzing an algebra.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("invalid scalar: {0}")]
    BadScalar(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("multiplication table is not associative: (e{i} e{j}) e{k} != e{i} (e{j} e{k})")]
    NonAssociative { i: usize, j: usize, k: usize },

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("operation needs scalar regime {needed}, algebra uses {found}")]
    WrongRegime { needed: String, found: String },

    #[error("problem size exceeds limit: {0}")]
    SizeLimit(String),

    #[error("element is not endomorphic-left: {0}")]
    NotEndomorphicLeft(String),

    #[error("element is not invertible in the unitalization: {0}")]
    NotInvertible(String),

    #[error("set description is incomplete; exact comparison impossible: {0}")]
    IncompleteDescription(String),

    #[error("distance between sets is undefined: {0}")]
    EmptySet(String),

    #[error("numeric tolerance exceeded: {0}")]
    Tolerance(String),

    #[error("algebra is not verified very nice: {0}")]
    NotVeryNice(String),

    #[error("unknown builtin family: {0}")]
    UnknownFamily(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("{0}")]
    Invalid(String),
}
