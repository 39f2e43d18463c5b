//! `pstlab`: command-line front end for chain certification, synthesis,
//! fidelity traces, saturation scans and falsification searches.
//!
//! Exit status: 0 on success or an admissible chain, 2 when `analyze` finds
//! the chain inadmissible, 1 on any error.

mod commands;
mod config;

use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::Parser;

use commands::EXIT_ERROR;
use config::{Cli, RunConfig};

/// Sizes the global worker pool from `PSTLAB_THREADS` when set.
fn init_threads() -> Result<()> {
    let Ok(value) = std::env::var("PSTLAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .with_context(|| format!("PSTLAB_THREADS must be a positive integer, got `{value}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring worker threads")
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_ERROR),
            };
        }
    };

    let outcome = init_threads()
        .and_then(|()| RunConfig::from_cli(cli))
        .and_then(|config| commands::run(&config));
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
