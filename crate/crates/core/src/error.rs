use thiserror::Error;

use crate::words::Letter;

/// Errors raised by the algebra, evaluation and parsing routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index r must be positive")]
    ZeroIndex,

    #[error("letter z[{i},{j}] is invalid for r = {r}")]
    InvalidLetter { i: u32, j: u32, r: u32 },

    #[error("cannot bracket an empty sequence of letters")]
    EmptyBracket,

    #[error("the empty word is not allowed here")]
    EmptyWord,

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("mismatched index: r = {left} vs r = {right}")]
    IndexMismatch { left: u32, right: u32 },

    #[error("composition parts must be positive and nonempty")]
    InvalidComposition,

    #[error("{0} must be at least {1}")]
    OutOfRange(&'static str, usize),

    #[error("invalid set partition: {0}")]
    InvalidPartition(String),

    #[error("partitions are not comparable in the refinement order")]
    Incomparable,

    #[error("division by zero in the cyclotomic field")]
    DivisionByZero,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("letter {letter} has j >= r = {r}")]
    LetterOutsideAlgebra { letter: Letter, r: u32 },

    #[error("brute-force confirmation of the signed power-sum formula failed")]
    SignGateFailed,
}

pub type Result<T> = std::result::Result<T, Error>;
