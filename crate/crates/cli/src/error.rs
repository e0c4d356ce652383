//! Error classes and their exit codes.

use std::fmt;

pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_UNKNOWN_COMMAND: i32 = 64;
pub const EXIT_INVALID_INPUT: i32 = 65;
pub const EXIT_IO: i32 = 74;

#[derive(Debug)]
pub enum CliError {
    Core(negdim::Error),
    Invalid(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use negdim::Error as E;
        match self {
            CliError::Core(E::PreconditionViolated(_) | E::Unsupported(_) | E::InsufficientTrials(_)) => EXIT_INVALID_INPUT,
            CliError::Core(_) => EXIT_DOMAIN,
            CliError::Invalid(_) => EXIT_INVALID_INPUT,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<negdim::Error> for CliError {
    fn from(e: negdim::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            CliError::Io(std::io::Error::other(e))
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}
