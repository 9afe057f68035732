use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ladder::TemperatureLadder;
use super::replica::{exchange_pairs, exchange_round, Replica, ReplicaStats, StepOutcome};
use super::trace::{TraceRecord, TraceSink};
use crate::error::{Error, Result};
use crate::ising::{IsingModel, SpinConfig};
use crate::proposals::Proposer;
use crate::rng::{stream, ChainRng};

pub const DEFAULT_MAX_ITERATIONS: u64 = 200_000;

/// Energies this close above the target still count as converged.
const TARGET_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub ladder: TemperatureLadder,
    /// Local updates between exchange rounds.
    pub swap_interval: u64,
    pub max_iterations: u64,
    pub target_energy: f64,
    pub seed: u64,
    #[serde(default)]
    pub run_id: u64,
    /// Shared start for every replica; uniform random per replica otherwise.
    #[serde(default)]
    pub initial: Option<SpinConfig>,
    /// Step replicas on the rayon pool. Results do not depend on it.
    #[serde(default)]
    pub parallel: bool,
}

impl RunConfig {
    pub fn new(ladder: TemperatureLadder, target_energy: f64, seed: u64) -> Self {
        Self {
            ladder,
            swap_interval: 1,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            target_energy,
            seed,
            run_id: 0,
            initial: None,
            parallel: false,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.swap_interval == 0 {
            return Err(Error::param("swap_interval", "must be at least 1"));
        }
        if self.max_iterations == 0 {
            return Err(Error::param("max_iterations", "must be at least 1"));
        }
        if self.target_energy.is_nan() {
            return Err(Error::param("target_energy", "must not be NaN"));
        }
        if let Some(s) = &self.initial {
            s.check_len(n)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapPairStats {
    pub lower: usize,
    pub attempts: u64,
    pub accepts: u64,
}

impl SwapPairStats {
    pub fn acceptance_rate(&self) -> Option<f64> {
        (self.attempts > 0).then(|| self.accepts as f64 / self.attempts as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub converged: bool,
    /// Last iteration executed; equals the convergence iteration when converged.
    pub iterations: u64,
    /// Per slot, the iteration at which that slot met the target.
    pub convergence_iterations: Vec<Option<u64>>,
    pub best_config: SpinConfig,
    pub best_energy: f64,
    pub final_configs: Vec<SpinConfig>,
    pub replica_stats: Vec<ReplicaStats>,
    pub swap_pairs: Vec<SwapPairStats>,
    /// Records collected by [`run_parallel_tempering`]; empty when streamed elsewhere.
    pub trace: Vec<TraceRecord>,
}

impl RunResult {
    pub fn total_shots(&self) -> u64 {
        self.replica_stats.iter().map(|s| s.shots).sum()
    }

    /// Fastest converging slot's iteration count.
    pub fn first_convergence(&self) -> Option<u64> {
        self.convergence_iterations.iter().flatten().min().copied()
    }
}

/// Runs the tempering loop and keeps the whole trace in memory.
pub fn run_parallel_tempering(
    model: &IsingModel,
    proposer: &dyn Proposer,
    config: &RunConfig,
) -> Result<RunResult> {
    let mut trace = Vec::new();
    let mut result = run_with_sink(model, proposer, config, &mut trace)?;
    result.trace = trace;
    Ok(result)
}

/// Iteration `t >= 1` performs one local update per replica, then checks the
/// target, then (if still running and `t` is a multiple of the swap interval)
/// one exchange round. Iteration 0 only checks the starting configurations.
pub fn run_with_sink(
    model: &IsingModel,
    proposer: &dyn Proposer,
    config: &RunConfig,
    sink: &mut dyn TraceSink,
) -> Result<RunResult> {
    let n = model.n();
    config.validate(n)?;
    let temperatures = config.ladder.temperatures();
    let slots = temperatures.len();

    let mut rngs: Vec<ChainRng> = (0..slots)
        .map(|i| stream(config.seed, i as u64 + 1))
        .collect();
    let mut exchange_rng = stream(config.seed, 0);
    let mut replicas = Vec::with_capacity(slots);
    for (i, (&t, rng)) in temperatures.iter().zip(rngs.iter_mut()).enumerate() {
        let start = match &config.initial {
            Some(s) => s.clone(),
            None => SpinConfig::random(n, rng),
        };
        replicas.push(Replica::new(i, t, start, model)?);
    }
    let mut swap_pairs: Vec<SwapPairStats> = (0..slots.saturating_sub(1))
        .map(|lower| SwapPairStats {
            lower,
            attempts: 0,
            accepts: 0,
        })
        .collect();

    let record =
        |r: &Replica, iteration: u64, step: Option<&StepOutcome>, swapped: bool| TraceRecord {
            run_id: config.run_id,
            iteration,
            replica: r.index(),
            temperature: r.temperature(),
            proposed_energy: step.map_or(r.current_energy(), |s| s.proposed_energy),
            accepted: step.is_some_and(|s| s.accepted),
            current_energy: r.current_energy(),
            best_energy: r.best_energy(),
            hamming_distance: step.map_or(0, |s| s.hamming_distance),
            swapped,
            shots_used: step.map_or(0, |s| s.shots_used),
        };
    let reached = |replicas: &[Replica]| -> Vec<bool> {
        replicas
            .iter()
            .map(|r| r.current_energy() <= config.target_energy + TARGET_TOL)
            .collect()
    };

    for r in &replicas {
        sink.record(&record(r, 0, None, false))?;
    }
    let mut hits = reached(&replicas);
    let mut iteration = 0;
    let mut round = 0u64;
    while !hits.iter().any(|&h| h) && iteration < config.max_iterations {
        iteration += 1;
        let steps: Vec<StepOutcome> = if config.parallel {
            replicas
                .par_iter_mut()
                .zip(rngs.par_iter_mut())
                .map(|(r, rng)| r.step(proposer, model, rng))
                .collect::<Result<_>>()?
        } else {
            replicas
                .iter_mut()
                .zip(rngs.iter_mut())
                .map(|(r, rng)| r.step(proposer, model, rng))
                .collect::<Result<_>>()?
        };
        hits = reached(&replicas);
        let mut swapped = vec![false; slots];
        let exchange =
            !hits.iter().any(|&h| h) && iteration % config.swap_interval == 0 && slots > 1;
        if exchange {
            debug_assert_eq!(
                exchange_pairs(slots, round).count(),
                if round.is_multiple_of(2) {
                    slots / 2
                } else {
                    (slots - 1) / 2
                }
            );
            for event in exchange_round(&mut replicas, round, &mut exchange_rng)? {
                let pair = &mut swap_pairs[event.lower];
                pair.attempts += 1;
                if event.accepted {
                    pair.accepts += 1;
                    swapped[event.lower] = true;
                    swapped[event.lower + 1] = true;
                }
            }
            round += 1;
        }
        for (r, (step, swapped)) in replicas.iter().zip(steps.iter().zip(swapped)) {
            sink.record(&record(r, iteration, Some(step), swapped))?;
        }
        if exchange {
            sink.flush()?;
        }
    }
    sink.flush()?;

    let converged = hits.iter().any(|&h| h);
    let best = replicas
        .iter()
        .min_by(|a, b| a.best_energy().total_cmp(&b.best_energy()))
        .expect("ladder is never empty");
    Ok(RunResult {
        converged,
        iterations: iteration,
        convergence_iterations: hits.iter().map(|&h| h.then_some(iteration)).collect(),
        best_config: best.best().clone(),
        best_energy: best.best_energy(),
        final_configs: replicas.iter().map(|r| r.current().clone()).collect(),
        replica_stats: replicas.iter().map(|r| r.stats()).collect(),
        swap_pairs,
        trace: Vec::new(),
    })
}
