//! `qpm`: index texts, run simulated closest-match searches, and synthesize
//! and verify the circuits behind them.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error (including a failed
//! `--verify` or `replay`), 3 resource limit.

mod data;
mod report;
mod search;
mod synth;

use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qpm_core::ErrorKind;

#[derive(Debug, Parser)]
#[command(
    name = "qpm",
    version,
    about = "Closest pattern matching by simulated amplitude amplification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the per-symbol indicator index of a text file.
    Index(data::IndexArgs),
    /// Classical closest-match offsets and score.
    Baseline(data::BaselineArgs),
    /// Write a random text with one planted occurrence of a random pattern.
    Plant(data::PlantArgs),
    /// Estimate the measurement distribution and success rate.
    Search(search::SearchArgs),
    /// Re-run a search from the spec embedded in its report.
    Replay(search::ReplayArgs),
    /// Synthesize a circuit, optionally verifying it by dense simulation.
    #[command(subcommand)]
    Synth(synth::SynthCommand),
    /// Oracle gate counts over a range of input widths.
    Scaling(synth::ScalingArgs),
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    /// A check ran and did not pass.
    Check(String),
    Core(qpm_core::Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Check(_) => 2,
            Failure::Core(e) => match e.kind() {
                ErrorKind::Resource => 3,
                ErrorKind::Domain | ErrorKind::Io => 2,
            },
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) | Failure::Check(msg) => f.write_str(msg),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<qpm_core::Error> for Failure {
    fn from(e: qpm_core::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Core(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Core(e.into())
    }
}

pub type CliResult<T> = Result<T, Failure>;

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Index(args) => data::index(args),
        Command::Baseline(args) => data::baseline(args),
        Command::Plant(args) => data::plant(args),
        Command::Search(args) => search::search(args),
        Command::Replay(args) => search::replay(args),
        Command::Synth(cmd) => synth::synth(cmd),
        Command::Scaling(args) => synth::scaling(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("qpm: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
