use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("undeclared generator `{name}` at line {line}, column {col}")]
    UndeclaredGenerator { name: String, line: usize, col: usize },

    #[error("permutation is not a bijection of 1..{d}: {msg}")]
    NotBijective { d: u8, msg: String },

    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(u8),

    #[error("letter {letter} out of range 1..{d}")]
    LetterOutOfRange { letter: usize, d: u8 },

    #[error("unknown generator name `{0}`")]
    UnknownName(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("witness `{element}` moves letter {letter}")]
    WitnessMovesLetter { element: String, letter: usize },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
