//! `confsalg` command-line front end.
//!
//! Exit codes: 0 success, 1 a requested check failed, 2 input error,
//! 3 solver inconsistency.

mod cli;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let args = cli::Cli::parse();
    if let Err(e) = cli::configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(cli::EXIT_INPUT);
    }
    match cli::run(&args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(cli::exit_code_for(&e))
        }
    }
}
