use alloc::string::String;

use thiserror::Error;

/// A formula syntax error, positioned at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("constant {value} out of range for {what}")]
    ConstantOutOfRange { what: &'static str, value: String },
    #[error("threshold {0} is outside [0,1]")]
    ThresholdOutOfRange(String),
    #[error("discount tail bound needs a positive threshold, got {0}")]
    NonPositiveThreshold(String),
    #[error("atom `{0}` is not assigned by the alphabet")]
    UnknownAtom(String),
    #[error("invalid lasso word: {0}")]
    InvalidWord(String),
    #[error("invalid Kripke structure: {0}")]
    InvalidModel(String),
    #[error("letter is not part of the automaton alphabet")]
    LetterNotInAlphabet,
    #[error("unsupported node in Boolean context: {0}")]
    NonBooleanNode(&'static str),
    #[error("weakness violated: states {0:?} lie on a cycle")]
    WeaknessViolation(alloc::vec::Vec<usize>),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
