//! `eigencone`: exact identities, Hessian spectra and hyperbolicity
//! certification for the Cartan and Lawson cubic fields.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod args;
mod commands;
mod output;

use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::Parser;

use args::Cli;
use commands::Verdict;

/// Bad flag values or unreadable inputs; maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn run(cli: &Cli) -> Result<Verdict> {
    let work = || {
        let start = Instant::now();
        let verdict = commands::dispatch(&cli.command, &cli.common)?;
        output::record_timing(cli.common.output.as_deref(), cli.command.name(), start.elapsed())?;
        Ok(verdict)
    };
    match cli.common.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.into())
            .build()?
            .install(work),
        None => work(),
    }
}

fn exit_code(outcome: &Result<Verdict>) -> u8 {
    match outcome {
        Ok(Verdict::Pass) => 0,
        Ok(Verdict::Fail) => 1,
        Err(e) if e.is::<UsageError>() => 2,
        Err(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    if let Err(e) = &outcome {
        eprintln!("error: {e:#}");
    }
    ExitCode::from(exit_code(&outcome))
}
