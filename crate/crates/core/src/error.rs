use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input (bad letter id, alphabet mismatch, ...).
    #[error("input error: {0}")]
    Input(String),

    /// A text document failed to parse.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An operation was called on an automaton outside its domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A configurable resource cap was hit.
    #[error("resource cap exceeded: {what} (cap {cap})")]
    Resource { what: String, cap: u64 },

    /// The Turing machine simulation left its tape or hit an undefined move.
    #[error("simulation error: {0}")]
    Simulation(String),

    /// An internal invariant did not hold.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, cap: u64) -> Self {
        Error::Resource {
            what: what.into(),
            cap,
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
