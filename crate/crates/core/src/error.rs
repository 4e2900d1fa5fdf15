use std::path::PathBuf;

use crate::argumentation::ArgHash;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("argument construction exceeded the budget of {budget} arguments")]
    ResourceLimit { budget: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("protocol violation by agent `{agent}`: {reason} (argument {argument})")]
    ProtocolViolation {
        agent: String,
        argument: ArgHash,
        reason: &'static str,
    },

    #[error("protocol violation: {0}")]
    IllegalMove(String),

    #[error("engine invariant broken: {0}")]
    EngineInvariant(String),

    /// Malformed document; `location` is `line L, column C` or a field path.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("case `{case_id}`: {source}")]
    Case {
        case_id: String,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn in_case(self, case_id: &str) -> Self {
        Error::Case {
            case_id: case_id.to_string(),
            source: Box::new(self),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by bad user input rather than a failed run.
    pub fn is_usage(&self) -> bool {
        match self {
            Error::InvalidInput(_) | Error::Parse { .. } => true,
            Error::Case { source, .. } => source.is_usage(),
            _ => false,
        }
    }
}
