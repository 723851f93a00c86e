use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use linesand_cli::{run, CliConfig};

fn main() -> ExitCode {
    let config = CliConfig::parse();
    let outcome = run(&config);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.status)
}
