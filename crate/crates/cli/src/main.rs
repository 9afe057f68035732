use std::process::ExitCode;

use clap::Parser;
use qemis_cli::cli::Cli;
use qemis_cli::commands::dispatch;
use qemis_cli::ConfigError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            // configuration problems are usage errors
            if e.downcast_ref::<ConfigError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
