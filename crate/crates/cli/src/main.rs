use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pureres_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    let mut stdout = std::io::stdout().lock();
    let text = out.stdout.trim_end_matches('\n');
    // A closed pipe is not worth a panic.
    let _ = writeln!(stdout, "{text}");
    ExitCode::from(out.code as u8)
}
