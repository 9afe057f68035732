pub mod compare;
pub mod oracle;
pub mod solve;
pub mod train;
pub mod verify;

use std::path::Path;

use anyhow::Result;

use crate::cli::{Cli, Command};
use crate::config::{config_hash, ExperimentConfig, Overrides};

pub fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Solve(a) => solve::run(&load(&a.config, &a.overrides.overrides())?).map(|_| ()),
        Command::Train(a) => train::run(&load(&a.config, &a.overrides.overrides())?).map(|_| ()),
        Command::Oracle(a) => oracle::run(&load(&a.config, &a.overrides.overrides())?).map(|_| ()),
        Command::Compare(a) => {
            let overrides = a.overrides.overrides();
            let configs = a
                .configs
                .iter()
                .map(|p| load(p, &overrides))
                .collect::<Result<Vec<_>>>()?;
            compare::run(&configs, overrides.out.as_deref()).map(|_| ())
        }
        Command::Verify(a) => {
            let report = verify::run(&a.dir)?;
            println!(
                "ok: {} files match config hash {}",
                report.files, report.config_hash
            );
            Ok(())
        }
    }
}

pub fn load(path: &Path, overrides: &Overrides) -> Result<ExperimentConfig> {
    let mut config = ExperimentConfig::load(path)?;
    config.apply(overrides);
    Ok(config)
}

/// The canonical config text and its hash.
pub fn stamp(config: &ExperimentConfig) -> (String, String) {
    let text = config.canonical_text();
    let hash = config_hash(&text);
    (text, hash)
}

fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()?)
}
