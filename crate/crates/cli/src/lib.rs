//! Command-line front end for `regmat`: reads Matrix Market or CSV files,
//! runs bounds, classification and decomposition, and prints text tables
//! or versioned JSON reports.

pub mod commands;
pub mod io;
pub mod json;
pub mod report;

use thiserror::Error;

pub use commands::Options;
pub use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input, bad flags, infeasible generator spec.
    #[error("input error: {0}")]
    Input(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Precondition(_) => 4,
        }
    }
}

impl From<regmat::Error> for CliError {
    fn from(e: regmat::Error) -> Self {
        use regmat::Error::*;
        match e {
            Dimension(_) | NonFinite { .. } | Infeasible(_) => CliError::Input(e.to_string()),
            Scale { .. } | Convergence { .. } => CliError::Numerical(e.to_string()),
            Precondition(_) => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<io::FormatError> for CliError {
    fn from(e: io::FormatError) -> Self {
        CliError::Input(e.to_string())
    }
}
