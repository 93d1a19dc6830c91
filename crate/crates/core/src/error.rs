use thiserror::Error;

use crate::circuit::Violation;
use crate::rules::RuleId;
use crate::text::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("circuit failed validation ({} violation(s)): {}", .0.len(), format_violations(.0))]
    Validation(Vec<Violation>),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("{rule} is not applicable at gate {anchor}: {diagnostic}")]
    NotApplicable {
        rule: RuleId,
        anchor: usize,
        diagnostic: String,
    },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("script `{script}` failed at step {step}: {reason}")]
    Script {
        script: String,
        step: usize,
        reason: String,
    },

    #[error("no session with id `{0}`")]
    UnknownSession(String),

    /// Undo or redo with nothing left in that direction.
    #[error("nothing to {0}")]
    EmptyHistory(String),

    /// A rewrite produced a circuit that is not equivalent to its input.
    #[error("internal soundness failure: {0}")]
    Soundness(String),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
