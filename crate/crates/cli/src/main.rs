//! `combfol` — run, verify, and report on coupled wave/Klein-Gordon
//! evolutions over the combined hyperboloid/flat foliation.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical abort,
//! 4 verification check failure.

mod artifacts;
mod checks;
mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "combfol", version, about = "wave/Klein-Gordon foliation toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evolve the configured system and write energies.csv, snapshots,
    /// and run_meta.json into the output directory.
    Run {
        /// Path to a key = value config file.
        config: PathBuf,
    },
    /// Run the configured verification checks and write report.json.
    Verify {
        /// Path to a key = value config file.
        config: PathBuf,
    },
    /// Summarize the artifacts of a previous run directory.
    Report {
        /// Output directory of a previous `combfol run`.
        run_dir: PathBuf,
    },
}

/// Map a library error to the documented process exit code.
fn exit_code(e: &combfol::Error) -> i32 {
    use combfol::Error::*;
    match e {
        Config(_) | WindowDoesNotCoverSlice(_) | DomainTooSmall { .. } | SliceBelowStart(_) => 2,
        _ => 3,
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Run { config } => artifacts::cmd_run(&config),
        Cmd::Verify { config } => checks::cmd_verify(&config),
        Cmd::Report { run_dir } => report::cmd_report(&run_dir),
    };
    std::process::exit(code);
}
