mod args;
mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use orlicz_core::{Error, NFunctionError};

use args::{Cli, Command};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_NUMERICAL: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Failure { code: EXIT_NUMERICAL, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Failure { code: EXIT_IO, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NonConvergence { .. } | Error::NFunction(NFunctionError::Range { .. }) => EXIT_NUMERICAL,
            Error::Format(_) => EXIT_IO,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<NFunctionError> for Failure {
    fn from(e: NFunctionError) -> Self {
        Error::from(e).into()
    }
}

/// Result of a subcommand: the machine-readable artifact, a one-paragraph
/// summary, and an optional failure raised after the artifact was produced.
pub struct Outcome {
    pub artifact: String,
    pub summary: String,
    pub failure: Option<Failure>,
}

fn emit(outcome: &Outcome, output: Option<&std::path::Path>, quiet: bool) -> Result<(), Failure> {
    match output {
        Some(path) => {
            std::fs::write(path, &outcome.artifact)
                .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))?;
            if !quiet {
                println!("{}", outcome.summary);
                println!("wrote {}", path.display());
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(outcome.artifact.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::io(format!("cannot write to stdout: {e}")))?;
            if !quiet {
                eprintln!("{}", outcome.summary);
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let quiet = cli.quiet;
    let (outcome, output) = match cli.command {
        Command::NfCheck(a) => (commands::nf_check(&a)?, a.output),
        Command::Norm(a) => (commands::norm(&a)?, a.output),
        Command::Ball(a) => (commands::ball(&a)?, a.output),
        Command::Laplacian(a) => (commands::laplacian(&a)?, a.output),
        Command::Decompose(a) => (commands::decompose(&a)?, a.output),
        Command::Capacity(a) => (commands::capacity(&a)?, a.output),
        Command::Experiment(a) => (commands::experiment(&a)?, a.output),
    };
    emit(&outcome, output.as_deref(), quiet)?;
    match outcome.failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
