//! Command-line driver: manifest decoding, subcommands and report rendering.

mod commands;
pub mod error;
pub mod wire;

pub use commands::{run, Cli, Outcome, BUDGET_VAR};
pub use error::CliError;
