//! Config-driven runs of the elastic scattering toolkit: forward
//! verification tables and shape reconstructions, written as CSV and JSON.

pub mod config;
pub mod output;
pub mod run;

pub use config::{LoadedConfig, Mode, Overrides, RunConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unreadable, malformed or inconsistent configuration, or an output
    /// location that cannot be written.
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(elastoscat_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<elastoscat_core::Error> for CliError {
    fn from(e: elastoscat_core::Error) -> Self {
        use elastoscat_core::Error as E;
        match e {
            E::InvalidMedium(_) | E::InvalidParameter { .. } | E::SourcePlacement(_) => CliError::Config(e.to_string()),
            other => CliError::Numerical(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("output: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Config(format!("output: {e}"))
    }
}
