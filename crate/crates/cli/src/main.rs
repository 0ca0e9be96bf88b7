use std::process::ExitCode;

use clap::Parser;
use dicke_cli::Cli;

fn main() -> ExitCode {
    match dicke_cli::run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
