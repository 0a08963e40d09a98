//! Command-line front end for the `defcover` solvers.

use std::path::PathBuf;

use thiserror::Error;

mod commands;
pub mod format;
pub mod report;

pub use commands::Outcome;
pub use report::RunReport;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: defcover::Error,
    },
    #[error(transparent)]
    Core(#[from] defcover::Error),
}

/// Runs one invocation. `argv[0]` is the program name.
///
/// Exit codes: 0 for yes/feasible/countered, 1 for no/infeasible/not
/// countered, 2 for usage, input or resource errors.
pub fn run_command(argv: &[String]) -> Outcome {
    commands::run(argv)
}
