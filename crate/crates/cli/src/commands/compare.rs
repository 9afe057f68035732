use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Result;
use qemis_core::analysis::{median, scaling_fit};
use serde::Serialize;

use super::{solve, stamp};
use crate::config::{config_hash, ConfigError, ExperimentConfig};
use crate::output::OutputDir;

/// Medians over converged runs of every instance of one size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub config: usize,
    pub config_hash: String,
    pub size: usize,
    pub instances: usize,
    pub runs: usize,
    pub converged_runs: usize,
    pub median_iterations: Option<f64>,
    pub median_shots: Option<f64>,
}

/// Growth rates of the medians in the problem size; empty when undefined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeRow {
    pub config: usize,
    pub config_hash: String,
    pub iterations_slope: Option<f64>,
    pub shots_slope: Option<f64>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
    pub slopes: Vec<SlopeRow>,
}

fn fit(points: &[(f64, Option<f64>)], what: &str, notes: &mut Vec<String>) -> Option<f64> {
    let pts: Option<Vec<(f64, f64)>> = points.iter().map(|&(x, y)| y.map(|y| (x, y))).collect();
    let Some(pts) = pts else {
        notes.push(format!("{what}: a size has no converged run"));
        return None;
    };
    match scaling_fit(&pts) {
        Ok(f) => Some(f.slope),
        Err(e) => {
            notes.push(format!("{what}: {e}"));
            None
        }
    }
}

/// Runs every config over the shared instance list. Output goes to `out`,
/// else to the first config's directory.
pub fn run(configs: &[ExperimentConfig], out: Option<&Path>) -> Result<Comparison> {
    if configs.len() < 2 {
        return Err(ConfigError::new("--config", "compare needs at least two configs").into());
    }
    let mut prepared = Vec::with_capacity(configs.len());
    for (c, config) in configs.iter().enumerate() {
        let p = config.prepare_solve()?;
        if let Some(first) = prepared.first() {
            let same = |a: &Vec<crate::config::SolveInstance>,
                        b: &Vec<crate::config::SolveInstance>| {
                a.len() == b.len()
                    && a.iter()
                        .zip(b)
                        .all(|(x, y)| x.instance.graph == y.instance.graph)
            };
            if !same(first, &p) {
                return Err(ConfigError::new(
                    "instance",
                    format!("config {c} does not share the instance list of config 0"),
                )
                .into());
            }
        }
        prepared.push(p);
    }
    let out_path = match out {
        Some(p) => p.to_path_buf(),
        None => configs[0].out_dir()?.to_path_buf(),
    };
    let texts: Vec<(String, String)> = configs.iter().map(stamp).collect();
    let combined: String = texts
        .iter()
        .map(|(t, _)| t.as_str())
        .collect::<Vec<_>>()
        .join("\n# ---\n");
    let hash = config_hash(&combined);
    let mut dir = OutputDir::create(&out_path, &hash)?;

    let mut rows = Vec::new();
    let mut slopes = Vec::new();
    for (c, (config, prep)) in configs.iter().zip(&prepared).enumerate() {
        let runs = solve::execute(config, prep, None)?;
        let mut by_size: BTreeMap<usize, Vec<&solve::InstanceRuns>> = BTreeMap::new();
        for r in &runs {
            by_size.entry(r.n).or_default().push(r);
        }
        let mut points = Vec::new();
        for (&size, group) in &by_size {
            let converged: Vec<_> = group
                .iter()
                .flat_map(|g| g.runs.iter())
                .filter(|r| r.converged)
                .collect();
            let iterations: Vec<f64> = converged
                .iter()
                .filter_map(|r| r.first_convergence())
                .map(|i| i as f64)
                .collect();
            let shots: Vec<f64> = converged.iter().map(|r| r.total_shots as f64).collect();
            let row = ComparisonRow {
                config: c,
                config_hash: texts[c].1.clone(),
                size,
                instances: group.len(),
                runs: group.iter().map(|g| g.runs.len()).sum(),
                converged_runs: converged.len(),
                median_iterations: median(&iterations),
                median_shots: median(&shots),
            };
            points.push((size as f64, row.median_iterations, row.median_shots));
            rows.push(row);
        }
        let mut notes = Vec::new();
        let it: Vec<_> = points.iter().map(|p| (p.0, p.1)).collect();
        let sh: Vec<_> = points.iter().map(|p| (p.0, p.2)).collect();
        slopes.push(SlopeRow {
            config: c,
            config_hash: texts[c].1.clone(),
            iterations_slope: fit(&it, "iterations", &mut notes),
            shots_slope: fit(&sh, "shots", &mut notes),
            note: notes.join("; "),
        });
    }
    dir.write_csv("comparison.csv", &rows)?;
    dir.write_csv("slopes.csv", &slopes)?;
    let notes: Vec<String> = texts
        .iter()
        .enumerate()
        .map(|(c, (_, h))| format!("config {c} hash {h}"))
        .collect();
    dir.write_manifest("compare", &notes, &combined)?;
    for s in &slopes {
        println!(
            "config {}: iterations slope {}, shots slope {}",
            s.config,
            s.iterations_slope
                .map(|v| v.to_string())
                .unwrap_or_else(|| "-".into()),
            s.shots_slope
                .map(|v| v.to_string())
                .unwrap_or_else(|| "-".into())
        );
    }
    Ok(Comparison { rows, slopes })
}
