use std::fs;
use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use lattice_kit_cli::run::failure;
use lattice_kit_cli::{run, Cli, CliError, ResultDocument, RunConfig};

fn main() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    let format = cli.format;
    let command = cli.command.as_str();
    let out = cli.out.clone();
    let outcome = match RunConfig::try_from(cli) {
        Ok(cfg) => run(&cfg),
        Err(e) => failure(ResultDocument::new(command), &CliError::Config(e), format),
    };
    if let Some(msg) = &outcome.error {
        eprintln!("lattice-kit {command}: {msg}");
    }
    match out {
        Some(path) => fs::write(&path, &outcome.text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout()
            .write_all(outcome.text.as_bytes())
            .context("cannot write to standard output")?,
    }
    Ok(ExitCode::from(outcome.exit_code))
}
