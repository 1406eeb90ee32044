//! `entwb`: construct σ_b and ρ_a, analyze them, sweep parameters and run the
//! claim registry, writing JSON and CSV reports.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use entwb_core::bipartition::Bipartition;

use config::{RunArgs, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] entwb_core::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Parser, Debug)]
#[command(
    name = "entwb",
    version,
    about = "Bound-entanglement state families: construction and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write serialized states for every grid point.
    Construct(RunArgs),
    /// Full analysis of each state: partial transposes, rank-2 search, range criterion, five forms.
    Analyze(RunArgs),
    /// One row per (state, split): λ_min, rank, inertia, rank-2 minimum.
    Sweep(RunArgs),
    /// Evaluate the claim registry; writes claims.json and summary.csv.
    VerifyClaims(RunArgs),
    /// Schmidt-rank-2 minimization with witness output.
    SearchDistill(DistillArgs),
}

#[derive(Args, Debug)]
struct DistillArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Comma-separated splits, e.g. "A-(BC)"; all three when omitted.
    #[arg(long, value_delimiter = ',')]
    split: Vec<String>,
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("ENTWB_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Config(format!("ENTWB_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let (cfg, outputs) = match &cli.command {
        Command::Construct(a) => {
            let cfg = RunConfig::from_args("construct", a)?;
            let out = commands::construct(&cfg)?;
            (cfg, out)
        }
        Command::Analyze(a) => {
            let cfg = RunConfig::from_args("analyze", a)?;
            let out = commands::analyze_cmd(&cfg)?;
            (cfg, out)
        }
        Command::Sweep(a) => {
            let cfg = RunConfig::from_args("sweep", a)?;
            let out = commands::sweep(&cfg)?;
            (cfg, out)
        }
        Command::VerifyClaims(a) => {
            let cfg = RunConfig::from_args("verify-claims", a)?;
            let out = commands::verify_claims(&cfg)?;
            (cfg, out)
        }
        Command::SearchDistill(d) => {
            let cfg = RunConfig::from_args("search-distill", &d.run)?;
            for s in &d.split {
                Bipartition::parse(s, [2, 2, 2]).map_err(|e| CliError::Config(e.to_string()))?;
            }
            let out = commands::search_distill(&cfg, &d.split)?;
            (cfg, out)
        }
    };
    commands::write_outputs(&cfg.out, &outputs)?;
    for (name, _) in &outputs {
        println!("{}", cfg.out.join(name).display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ CliError::Config(_)) => {
            eprintln!("entwb: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("entwb: {e}");
            ExitCode::from(1)
        }
    }
}
