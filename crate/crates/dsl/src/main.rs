use std::io::Write;
use std::process::ExitCode;

use algebroid_dsl::cli::{execute, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let out = execute(&Cli::parse());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    ExitCode::from(out.exit_code as u8)
}
