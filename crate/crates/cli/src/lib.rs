//! Command-line front end for `poisson-core`.
//!
//! [`run`] takes parsed arguments and returns the text to print together
//! with the exit status, so the binary stays a thin wrapper.

pub mod args;
mod commands;
pub mod format;
mod reproduce;

use std::fmt;

pub use args::Cli;
pub use reproduce::{reproduce, ReproduceId};

#[derive(Debug)]
pub enum CliError {
    /// Bad input or IO; exit status 2.
    Input(String),
    /// A negative mathematical answer; exit status 1.
    Negative(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Negative(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<poisson_core::Error> for CliError {
    fn from(e: poisson_core::Error) -> Self {
        use poisson_core::Error as E;
        match e {
            E::NotIntegrable { .. }
            | E::NotHomogeneous
            | E::DegreeTooHigh(_)
            | E::NotLieAutomorphism
            | E::NormalizationInfeasible(_) => CliError::Negative(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("invalid JSON: {e}"))
    }
}

/// What a command printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    /// A successful run whose answer is negative, e.g. a failed check.
    fn negative(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 1,
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match commands::dispatch(cli) {
        Ok(o) => o,
        Err(CliError::Negative(m)) => Outcome {
            stdout: String::new(),
            stderr: format!("{m}\n"),
            code: 1,
        },
        Err(CliError::Input(m)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
            code: 2,
        },
    }
}
