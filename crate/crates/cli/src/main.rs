//! Binary entry point: parse, execute, render, and map failures onto
//! the documented exit codes.

use clap::Parser;
use muub_cli::args::Cli;
use muub_cli::{commands, output};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.global.format;
    let out = cli.global.out.clone();

    match commands::execute(&cli).and_then(|outcome| {
        let text = output::render(&outcome, format)?;
        output::emit(&text, out.as_deref())?;
        Ok(outcome.exit)
    }) {
        Ok(code) => ExitCode::from(code),
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code())
        }
    }
}
