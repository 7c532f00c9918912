//! Command-line front end: argument parsing, dispatch over the configured
//! field, and output formatting.

pub mod args;
pub mod commands;
pub mod error;

pub use args::{Cli, Config, Format};
pub use commands::{execute, Rendered};
pub use error::CliError;

/// What the process should print and exit with.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

/// Run a parsed command line to completion.
pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok(r) => {
            let stdout = match cli.config.format {
                Format::Json => r.to_json(&cli.config),
                Format::Tsv => r.tsv.clone().unwrap_or_else(|| r.text.clone()),
                Format::Text => r.text.clone(),
            };
            Outcome {
                stdout,
                code: if r.success { 0 } else { 1 },
            }
        }
        Err(e) => Outcome {
            stdout: e.to_json(),
            code: e.exit_code(),
        },
    }
}
