//! Command line and HTTP front end.

pub mod commands;
pub mod server;

use std::fmt;
use std::process::ExitCode;

use pauli_forge::Error;

/// Process exit status of every command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    VerificationFailed = 1,
    Usage = 2,
    Resource = 3,
}

impl From<ExitStatus> for ExitCode {
    fn from(s: ExitStatus) -> ExitCode {
        ExitCode::from(s as u8)
    }
}

/// A failure carrying its exit status and a message for standard error.
#[derive(Debug)]
pub struct CliError {
    pub status: ExitStatus,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError {
            status: ExitStatus::Usage,
            message: message.into(),
        }
    }

    pub fn failed(message: impl Into<String>) -> CliError {
        CliError {
            status: ExitStatus::VerificationFailed,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let status = match e {
            Error::Resource(_) => ExitStatus::Resource,
            Error::Soundness(_) | Error::Script { .. } => ExitStatus::VerificationFailed,
            _ => ExitStatus::Usage,
        };
        CliError {
            status,
            message: e.to_string(),
        }
    }
}
