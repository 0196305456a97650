mod args;
mod commands;
mod suites;

use std::process::ExitCode;

use clap::Parser;
use qproj_core::io::IoError;
use qproj_core::{limits, ProjectivizeError};

use args::Cli;

/// Why a command could not produce its result.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Guard(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Guard(_) => 3,
        }
    }
}

impl<E: Into<IoError>> From<E> for Failure {
    fn from(e: E) -> Self {
        let e: IoError = e.into();
        if e.is_guard() {
            Failure::Guard(format!("{e} (see --unsafe-raise-guards)"))
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

pub fn proj_failure(e: ProjectivizeError) -> Failure {
    Failure::from(qproj_core::MapError::Projectivize(e))
}

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Violation,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(bits) = cli.raise_guards {
        limits::raise(bits);
    }
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Violation) => ExitCode::from(1),
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Guard(m) => eprintln!("size guard: {m}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
