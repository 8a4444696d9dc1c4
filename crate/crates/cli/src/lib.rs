//! weylkit command-line surface: JSON document schemas, fixture
//! generators, graph-algebra checks, DOT rendering, and the command
//! implementations behind the `weylkit` binary.

pub mod commands;
pub mod document;
pub mod dot;
pub mod generate;
pub mod graph;

use thiserror::Error;

/// Command-level failures. `Input` maps to exit code 2; failed law
/// checks are reported, not raised.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
