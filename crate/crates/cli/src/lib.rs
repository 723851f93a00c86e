//! Command-line front end: graph and matrix files, subcommand dispatch, and
//! report formatting.

pub mod commands;
pub mod error;
pub mod graphfile;
pub mod matrixfile;

pub use commands::{run, CliConfig, Outcome};
pub use error::CliError;
