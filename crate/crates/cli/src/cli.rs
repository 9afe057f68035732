use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::Overrides;

#[derive(Debug, Parser)]
#[command(
    name = "qemis",
    version,
    about = "Parallel-tempering MCMC with simulated circuit proposals for maximum independent set"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run repeated parallel-tempering solves and write traces and summaries.
    Solve(RunArgs),
    /// Train circuit angles (and optionally λ) and write a parameter file.
    Train(RunArgs),
    /// Build exact μ, Q and P and report stationarity and TV curves.
    Oracle(RunArgs),
    /// Run several configs on a shared instance list and tabulate medians and slopes.
    Compare(CompareArgs),
    /// Re-derive the config hash of an output directory and check every file.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct OverrideArgs {
    /// Master seed; run r uses a seed derived from it and r.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory, overriding the config's `out`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Independent runs per instance.
    #[arg(long)]
    pub repeats: Option<usize>,
}

impl OverrideArgs {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            seed: self.seed,
            out: self.out.clone(),
            repeats: self.repeats,
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// TOML experiment config.
    #[arg(long)]
    pub config: PathBuf,
    #[command(flatten)]
    pub overrides: OverrideArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// At least two configs sharing one instance list.
    #[arg(long = "config", required = true, num_args = 1)]
    pub configs: Vec<PathBuf>,
    #[command(flatten)]
    pub overrides: OverrideArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Output directory containing a manifest.
    pub dir: PathBuf,
}
