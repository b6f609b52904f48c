//! Command-line surface for the height-gap toolkit: configuration, JSON
//! input and reports, the subcommands and the verification suites.

pub mod commands;
pub mod config;
pub mod input;
pub mod report;
pub mod suites;

use thiserror::Error;

pub use config::{DeskBounds, RunConfig};
pub use report::{Report, SCHEMA_VERSION};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    BadInput = 2,
    Inconsistent = 3,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    BadInput(String),
    /// An internal cross-check failed; the report is still emitted.
    #[error("internal consistency failure: {message}")]
    Inconsistent { message: String, report: Box<Report> },
}

impl CliError {
    pub fn bad(msg: impl Into<String>) -> CliError {
        CliError::BadInput(msg.into())
    }

    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::BadInput(_) => ExitStatus::BadInput,
            CliError::Inconsistent { .. } => ExitStatus::Inconsistent,
        }
    }
}
