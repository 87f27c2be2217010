//! `autologic`: command-line drivers over the `automaton_logic` library.

pub mod commands;
pub mod dot;
pub mod envelope;

use thiserror::Error;

pub use commands::{run, Cli};
pub use envelope::{from_json, to_json, Object};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] automaton_logic::Error),
    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Domain and input errors exit with 1; clap reports usage errors with 2.
    pub fn exit_code(&self) -> i32 {
        1
    }
}
