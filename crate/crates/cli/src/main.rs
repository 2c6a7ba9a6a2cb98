//! `algred`: algebraic lattice reduction for the Golden Code from the command line.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "algred", version, about = "Algebraic lattice reduction for the Golden Code")]
struct Cli {
    /// Configuration file (`simulate` only).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Overrides the configured or default seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads; defaults to one per core.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Frame-error-rate sweep over Rayleigh channels; writes CSV.
    Simulate,
    /// Reduces one 2x2 channel: 8 reals, row-major, re/im interleaved.
    Reduce {
        /// Input file; standard input when omitted or `-`.
        input: Option<PathBuf>,
    },
    /// Checks the fundamental polyhedron against the published tables.
    VerifyDomain {
        /// Monte-Carlo volume samples.
        #[arg(long, default_value_t = 10_000_000)]
        samples: usize,
    },
    /// Distribution of tile-walk lengths over Rayleigh channels.
    StepStats {
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        /// Also write the step histogram as CSV.
        #[arg(long, value_name = "FILE")]
        histogram: Option<PathBuf>,
    },
    /// Goodness of fit of the channel statistics.
    DistChecks {
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Prints the sixteen generators and inverses.
    DumpGenerators,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::dispatch(cli) {
        Ok(commands::Outcome::Success) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Failed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
