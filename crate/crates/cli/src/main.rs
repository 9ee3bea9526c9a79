#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod grid;
mod output;

use args::{Cli, Command};
use clap::Parser;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(lzsm_core::Error),
    Io(std::io::Error),
}

impl From<lzsm_core::Error> for CliError {
    fn from(e: lzsm_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Core(e) => e.kind(),
            CliError::Io(_) => "io",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(lzsm_core::Error::Domain(_)) => 2,
            _ => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
            CliError::Io(e) => e.to_string(),
        }
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    if let Some(n) = flag {
        return Ok(Some(n));
    }
    match std::env::var("LZSM_THREADS") {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("LZSM_THREADS must be a non-negative integer, got {s:?}"))),
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = match &cli.command {
        Command::ScanP01(a) => &a.common,
        Command::ScanError(a) => &a.common,
        Command::SolveGate(a) => &a.common,
        Command::Rates(a) => &a.common,
        Command::CompareApprox(a) => &a.common,
    };
    if let Some(n) = thread_count(common.threads)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match &cli.command {
        Command::ScanP01(a) => commands::scan_p01(a),
        Command::ScanError(a) => commands::scan_error(a),
        Command::SolveGate(a) => commands::solve_gate(a),
        Command::Rates(a) => commands::rates_cmd(a),
        Command::CompareApprox(a) => commands::compare_approx(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: kind={} message={}", e.kind(), e.message().replace('\n', " "));
            ExitCode::from(e.exit_code())
        }
    }
}
