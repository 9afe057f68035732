use std::path::PathBuf;

use anyhow::{Context, Result};
use qemis_core::analysis::{convergence_stats, ConvergenceStats, RunSummary};
use qemis_core::mcmc::{run_with_sink, NullSink, TraceSink};
use qemis_core::rng::derive_seed;
use rayon::prelude::*;
use serde::Serialize;

use super::{stamp, thread_pool};
use crate::config::{ExperimentConfig, SolveInstance};
use crate::output::{JsonlTrace, OutputDir};

/// Runs of one instance, ordered by run id.
#[derive(Debug, Clone)]
pub struct InstanceRuns {
    pub name: String,
    pub n: usize,
    pub target: f64,
    pub runs: Vec<RunSummary>,
    pub best_configs: Vec<String>,
    pub stats: ConvergenceStats,
}

#[derive(Debug, Serialize)]
struct SummaryRow<'a> {
    instance: &'a str,
    n: usize,
    run_id: u64,
    seed: u64,
    converged: bool,
    iterations: u64,
    first_convergence: Option<u64>,
    best_energy: f64,
    target: f64,
    total_shots: u64,
    best_config: &'a str,
}

#[derive(Debug, Serialize)]
struct StatsRow<'a> {
    instance: &'a str,
    n: usize,
    runs: usize,
    converged_runs: usize,
    percent_converged: f64,
    median_iterations: Option<f64>,
    median_shots: Option<f64>,
    /// `;`-joined per replica slot, coldest first.
    replica_percent: String,
    replica_median_iterations: String,
}

fn join<T>(values: &[T], f: impl Fn(&T) -> String) -> String {
    values.iter().map(f).collect::<Vec<_>>().join(";")
}

pub fn trace_name(instance: usize, run: usize) -> String {
    format!("trace_i{instance}_r{run}.jsonl")
}

/// Runs `repeats` seeded runs per instance on a bounded pool. Run `r` uses
/// seed `derive_seed(master, r)` whatever the instance or worker count.
pub fn execute(
    config: &ExperimentConfig,
    prepared: &[SolveInstance],
    mut out: Option<&mut OutputDir>,
) -> Result<Vec<InstanceRuns>> {
    let jobs: Vec<(usize, usize)> = (0..prepared.len())
        .flat_map(|i| (0..config.repeats).map(move |r| (i, r)))
        .collect();
    let trace_paths: Vec<Option<PathBuf>> = match out.as_deref_mut() {
        Some(dir) if !config.run.no_traces => jobs
            .iter()
            .map(|&(i, r)| dir.reserve(&trace_name(i, r)).map(Some))
            .collect::<Result<_>>()?,
        _ => vec![None; jobs.len()],
    };
    let hash = out
        .as_deref()
        .map(|d| d.hash().to_string())
        .unwrap_or_default();
    let pool = thread_pool(config.workers)?;
    let results: Vec<(RunSummary, String)> = pool.install(|| {
        jobs.par_iter()
            .zip(&trace_paths)
            .map(|(&(i, r), path)| {
                let inst = &prepared[i];
                let seed = derive_seed(config.seed, r as u64);
                let mut run =
                    config.run_config(inst.ladder.clone(), inst.target, inst.start.clone());
                run.seed = seed;
                run.run_id = r as u64;
                let result = match path {
                    Some(path) => {
                        let mut sink = JsonlTrace::create(path, &hash)?;
                        let result =
                            run_with_sink(&inst.model, inst.proposer.as_ref(), &run, &mut sink)?;
                        sink.flush()?;
                        sink.finish()?;
                        result
                    }
                    None => {
                        run_with_sink(&inst.model, inst.proposer.as_ref(), &run, &mut NullSink)?
                    }
                };
                Ok((
                    RunSummary::from_result(r as u64, seed, &result),
                    result.best_config.to_string(),
                ))
            })
            .collect::<Result<_>>()
    })?;
    let mut grouped = Vec::with_capacity(prepared.len());
    for (i, chunk) in results.chunks(config.repeats).enumerate() {
        let inst = &prepared[i];
        let runs: Vec<RunSummary> = chunk.iter().map(|(s, _)| s.clone()).collect();
        grouped.push(InstanceRuns {
            name: inst.instance.name.clone(),
            n: inst.instance.graph.n(),
            target: inst.target,
            stats: convergence_stats(&runs)?,
            best_configs: chunk.iter().map(|(_, b)| b.clone()).collect(),
            runs,
        });
    }
    Ok(grouped)
}

pub fn describe(prepared: &[SolveInstance]) -> Vec<String> {
    let mut notes = Vec::new();
    for (i, p) in prepared.iter().enumerate() {
        notes.push(format!(
            "instance {i} {}: n={} edges={} target={} ladder={:?} proposer={}",
            p.instance.name,
            p.instance.graph.n(),
            p.instance.graph.num_edges(),
            p.target,
            p.ladder.temperatures(),
            p.proposer.name(),
        ));
        if let Some(c) = &p.circuit {
            notes.push(format!(
                "instance {i} circuit: gamma={} beta={} depth={} mixer={:?} init={:?} eps_mix={}",
                c.params.gamma, c.params.beta, c.depth, c.mixer, c.init, c.eps_mix
            ));
        }
        if let Some(cov) = &p.coverage {
            notes.push(format!(
                "instance {i} swap coverage: {}/{} edges ({}){}",
                cov.covered_edges,
                cov.total_edges,
                cov.fraction,
                cov.note
                    .as_deref()
                    .map(|n| format!(", {n}"))
                    .unwrap_or_default()
            ));
        }
    }
    notes
}

/// Settings that change scheduling but not results.
pub fn execution_note(config: &ExperimentConfig) -> String {
    format!(
        "execution: workers={} parallel_replicas={}",
        config.workers, config.run.parallel_replicas
    )
}

pub fn run(config: &ExperimentConfig) -> Result<Vec<InstanceRuns>> {
    let prepared = config.prepare_solve()?;
    let out_path = config.out_dir()?.to_path_buf();
    let (canonical, hash) = stamp(config);
    let mut out = OutputDir::create(&out_path, &hash)?;
    let grouped = execute(config, &prepared, Some(&mut out)).context("solve failed")?;

    let mut summary = Vec::new();
    let mut stats = Vec::new();
    for g in &grouped {
        for (s, best) in g.runs.iter().zip(&g.best_configs) {
            summary.push(SummaryRow {
                instance: &g.name,
                n: g.n,
                run_id: s.run_id,
                seed: s.seed,
                converged: s.converged,
                iterations: s.iterations,
                first_convergence: s.first_convergence(),
                best_energy: s.best_energy,
                target: g.target,
                total_shots: s.total_shots,
                best_config: best,
            });
        }
        stats.push(StatsRow {
            instance: &g.name,
            n: g.n,
            runs: g.stats.runs,
            converged_runs: g.stats.converged_runs,
            percent_converged: g.stats.percent_converged,
            median_iterations: g.stats.median_iterations,
            median_shots: g.stats.median_shots,
            replica_percent: join(&g.stats.replica_percent, |p| p.to_string()),
            replica_median_iterations: join(&g.stats.replica_median_iterations, |m| {
                m.map(|v| v.to_string()).unwrap_or_default()
            }),
        });
    }
    out.write_csv("summary.csv", &summary)?;
    out.write_csv("stats.csv", &stats)?;
    let mut notes = describe(&prepared);
    notes.push(execution_note(config));
    out.write_manifest("solve", &notes, &canonical)?;
    for g in &grouped {
        println!(
            "{}: {}/{} runs converged, median iterations {}",
            g.name,
            g.stats.converged_runs,
            g.stats.runs,
            g.stats
                .median_iterations
                .map(|m| m.to_string())
                .unwrap_or_else(|| "-".into())
        );
    }
    Ok(grouped)
}
