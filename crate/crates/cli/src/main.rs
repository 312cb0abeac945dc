mod args;
mod commands;
mod load;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Verified.
pub const EXIT_OK: u8 = 0;
/// Usage, parse or evaluation error.
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
/// A check whose claim is a theorem was refuted.
pub const EXIT_REFUTED: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OK });
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(koszul_core::Error::Timeout) => {
            println!("inconclusive: timeout");
            ExitCode::from(EXIT_INCONCLUSIVE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
