use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid symbol {found:?} at position {position}")]
    Parse { position: usize, found: char },

    #[error("sequence contains no binary digits")]
    EmptySequence,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("conflicting outputs specified for input {input:#b}")]
    Conflict { input: u128 },

    #[error("no embedded primitive polynomial of degree {0}")]
    UnsupportedDegree(usize),

    #[error("LFSR cannot leave the all-zero state")]
    DegenerateState,

    #[error("generator provides {available} distinct states, {needed} are needed")]
    Capacity { needed: u128, available: u128 },

    #[error("expected {expected} bits, got {found}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("window length {k} is infeasible, at least {required} stages are needed")]
    InfeasibleLength { k: usize, required: usize },

    #[error("{width} inputs exceed the supported maximum of {max}")]
    UnsupportedWidth { width: usize, max: usize },

    #[error("description line {line}: {message}")]
    Description { line: usize, message: String },

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Errors caused by malformed user input rather than by the domain.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::EmptySequence | Error::Description { .. }
        )
    }
}
