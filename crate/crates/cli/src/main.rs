mod args;
mod commands;
mod error;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn run(cli: &Cli) -> Result<bool, CliError> {
    let mut buf = Vec::new();
    let out = &mut buf;
    let passed = match &cli.command {
        Command::Simulate(a) => commands::simulate(a, cli.seed, out)?,
        Command::Equilibria(a) => commands::equilibria(a, out)?,
        Command::Classify(a) => commands::classify(a, out)?,
        Command::Verify(a) => commands::verify(a, cli.seed, out)?,
        Command::Integrals(a) => commands::integrals(a, cli.seed, out)?,
    };
    let mut sink = commands::sink(cli.output.as_deref())?;
    sink.write_all(&buf)?;
    sink.flush()?;
    Ok(passed)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
