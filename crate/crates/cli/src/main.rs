mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Reliability(a) => commands::reliability(a),
        Command::Theorem(a) => commands::theorem(a),
        Command::Example1(a) => commands::example_1(a),
        Command::Example2(a) => commands::example_2(a),
        Command::Asymptotics(a) => commands::asymptotics(a),
        Command::OracleCheck(a) => commands::oracle(a),
        Command::DumpPencil(a) => commands::dump_pencil(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}
