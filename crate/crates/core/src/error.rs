use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} is outside the alphabet of size {size}")]
    LetterOutOfDomain { letter: u8, size: usize },

    #[error("alphabet size must be in 1..=255, got {0}")]
    InvalidAlphabet(usize),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid word spec: {0}")]
    InvalidSpec(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("requested {requested} letters, capacity cap is {cap}")]
    Capacity { requested: usize, cap: usize },

    #[error("word is finite with {available} letters, {requested} requested")]
    FiniteWord { requested: usize, available: usize },

    #[error("{what} = {value} out of range ({bound})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        bound: String,
    },

    #[error("integer overflow computing {0}")]
    Overflow(&'static str),

    #[error("operation requires a binary word, alphabet has {0} letters")]
    NotBinary(usize),
}
