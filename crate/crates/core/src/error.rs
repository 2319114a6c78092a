use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed text; `position` is a character offset into the input.
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("alphabet mismatch: word over {left} combined with word over {right}")]
    AlphabetMismatch { left: String, right: String },

    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),

    /// An operation was called outside its domain (e.g. equal words where
    /// distinct ones are required).
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
