use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("lifting obstruction: {0}")]
    LiftingObstruction(String),

    #[error("not polynomial-count on this instance: {0}")]
    NotPolynomialCount(String),

    #[error("resource budget exceeded: {what} needs {required}, budget is {budget}")]
    Budget {
        what: String,
        required: String,
        budget: u64,
    },

    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_)
            | Error::Syntax { .. }
            | Error::Precondition(_)
            | Error::LiftingObstruction(_)
            | Error::NotPolynomialCount(_) => 2,
            Error::Budget { .. } => 3,
            Error::InvariantViolation(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
