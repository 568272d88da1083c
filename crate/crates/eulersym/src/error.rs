//! Shared error type for the whole crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: [{expected}] vs [{got}]")]
    RingMismatch { expected: String, got: String },

    #[error("variable index {index} out of range (ring has {count} variables)")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("ring needs at least one variable")]
    EmptyRing,

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("polynomial is not homogeneous")]
    Inhomogeneous,

    #[error("expected a homogeneous polynomial of degree {expected}, got degree {got}")]
    WrongDegree { expected: u32, got: u32 },

    #[error("substitution image for a linear change of coordinates must have degree <= 1")]
    NonLinearImage,

    #[error("polynomial does not lie in the span")]
    NotAMember,

    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("a constant polynomial is not allowed here")]
    ConstantPolynomial,

    #[error("an empty list of polynomials is not allowed here")]
    EmptyInput,

    #[error("prolongation is undefined at degree 0")]
    ProlongDegreeZero,

    #[error("symbol system has no nonzero component in degree {0}")]
    EmptyComponent(u32),

    #[error("invalid symbol system: {0}")]
    InvalidSystem(String),

    #[error("operation requires a rank-2 system, got rank {0}")]
    RankNotTwo(u32),

    #[error("point maps to the zero vector (the map is undefined there)")]
    IndeterminatePoint,

    #[error("parse error at line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn ring_mismatch(expected: &crate::poly::Ring, got: &crate::poly::Ring) -> Self {
        Error::RingMismatch {
            expected: expected.vars().join(", "),
            got: got.vars().join(", "),
        }
    }

    pub(crate) fn parse(line: usize, col: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            message: message.into(),
        }
    }
}
