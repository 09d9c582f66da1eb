mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;

use commands::{dispatch, RunError};
use config::{Cli, RunConfig};

const EXIT_FAILURE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_TOLERANCE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::from_common(cli.command.common()) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let report = match dispatch(&cli.command, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                RunError::Config(_) => EXIT_INVALID,
                RunError::Compute(_) => EXIT_FAILURE,
            });
        }
    };
    match output::emit(&report, cfg.format, cfg.output.as_deref()) {
        Ok(files) => {
            for f in files {
                eprintln!("wrote {}", f.display());
            }
        }
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(EXIT_FAILURE);
        }
    }
    for c in report.checks.iter().filter(|c| !c.passed()) {
        eprintln!("tolerance exceeded: {} = {:e} > {:e}", c.name, c.value, c.tolerance);
    }
    if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_TOLERANCE)
    }
}
