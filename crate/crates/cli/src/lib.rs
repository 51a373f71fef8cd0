//! Command-line driver for the `qwalk` simulator: configuration, the five
//! run modes and CSV output.

pub mod config;
pub mod output;
pub mod run;

pub use config::{Flags, Mode, RawConfig, RunConfig, Task};
pub use output::{emit_csv, Cell};
pub use run::run;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Simulation(#[from] qwalk::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    /// 2 for bad configuration, 3 for numerical-domain failures, 1 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Simulation(e) if e.is_numerical() => 3,
            CliError::Simulation(_) => 2,
            CliError::Io { .. } => 1,
        }
    }
}
