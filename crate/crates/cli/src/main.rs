//! Command-line front end. Exit codes: 0 success, 1 invalid input or usage,
//! 2 Gröbner budget exhausted, 3 a certificate check failed.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use einstein_sp::Error;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli.global, &cli.command) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded(_) => 2,
                _ => 1,
            })
        }
    }
}
