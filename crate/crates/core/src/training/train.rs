use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::expectation::Evaluator;
use super::nelder_mead::{minimize, Minimum, NelderMeadOptions};
use crate::error::{Error, Result};
use crate::ising::{IsingModel, SpinConfig};
use crate::statevector::{CircuitParams, QaoaCircuit};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainingOptions {
    pub nelder_mead: NelderMeadOptions,
    /// Points per axis of the coarse scan over `[-π, π]²` whose lowest
    /// local minima seed extra local searches in each stage; 0 disables it.
    pub scan_points: usize,
    /// How many scan minima seed a local search.
    pub scan_seeds: usize,
}

impl Default for TrainingOptions {
    fn default() -> Self {
        Self {
            nelder_mead: NelderMeadOptions::default(),
            scan_points: 25,
            scan_seeds: 3,
        }
    }
}

impl TrainingOptions {
    /// Local searches from the prescribed starting points only.
    pub fn local_only() -> Self {
        Self {
            scan_points: 0,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RestartSeed {
    Origin,
    P1Optimum,
    HalfGamma,
    HalfBeta,
    Scan,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RestartRecord {
    pub seed: RestartSeed,
    pub start_gamma: f64,
    pub start_beta: f64,
    pub start_energy: f64,
    pub gamma: f64,
    pub beta: f64,
    pub energy: f64,
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct P1Optimum {
    pub gamma: f64,
    pub beta: f64,
    pub energy: f64,
    pub searches: Vec<RestartRecord>,
}

/// Equal-angle depth-2 angles and how they were found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedParams {
    pub gamma: f64,
    pub beta: f64,
    /// Depth-2 expectation at `(gamma, beta)`.
    pub energy: f64,
    pub p1: P1Optimum,
    pub restarts: Vec<RestartRecord>,
}

impl TrainedParams {
    pub fn params(&self) -> CircuitParams {
        CircuitParams::new(self.gamma, self.beta)
    }
}

/// Minimizes `ev` over `(γ, β)`, surfacing the first evaluation error.
fn optimize(ev: &Evaluator, start: [f64; 2], options: &NelderMeadOptions) -> Result<Minimum> {
    let mut failure = None;
    let m = minimize(
        |x| match ev.energy(x[0], x[1]) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        },
        &start,
        options,
    );
    match failure {
        Some(e) => Err(e),
        None => Ok(m),
    }
}

/// Up to `keep` lowest local minima of a `points × points` grid over
/// `[-π, π]²`, lowest first, row-major order on ties.
///
/// Minima whose value repeats an earlier one within 1e-9 are skipped; the
/// landscape's symmetries make such copies equivalent.
fn scan(ev: &Evaluator, points: usize, keep: usize) -> Result<Vec<[f64; 2]>> {
    let points = points.max(2);
    let step = 2.0 * PI / (points - 1) as f64;
    let at = |i: usize| -PI + step * i as f64;
    let values: Vec<Vec<f64>> = (0..points)
        .into_par_iter()
        .map(|i| (0..points).map(|j| ev.energy(at(i), at(j))).collect())
        .collect::<Result<_>>()?;
    let is_local_min = |i: usize, j: usize| {
        let v = values[i][j];
        (i.saturating_sub(1)..=(i + 1).min(points - 1))
            .all(|a| (j.saturating_sub(1)..=(j + 1).min(points - 1)).all(|b| values[a][b] >= v))
    };
    let mut minima: Vec<(f64, usize, usize)> = (0..points)
        .flat_map(|i| (0..points).map(move |j| (i, j)))
        .filter(|&(i, j)| is_local_min(i, j))
        .map(|(i, j)| (values[i][j], i, j))
        .collect();
    minima.sort_by(|a, b| a.0.total_cmp(&b.0));
    minima.dedup_by(|b, a| (b.0 - a.0).abs() <= 1e-9);
    Ok(minima
        .into_iter()
        .take(keep)
        .map(|(_, i, j)| [at(i), at(j)])
        .collect())
}

/// Local searches from each seed; the best record comes first among ties.
fn searches(
    ev: &Evaluator,
    seeds: &[(RestartSeed, [f64; 2])],
    options: &NelderMeadOptions,
) -> Result<(Vec<RestartRecord>, RestartRecord)> {
    let records: Vec<RestartRecord> = seeds
        .par_iter()
        .map(|&(seed, start)| {
            let start_energy = ev.energy(start[0], start[1])?;
            let m = optimize(ev, start, options)?;
            Ok(RestartRecord {
                seed,
                start_gamma: start[0],
                start_beta: start[1],
                start_energy,
                gamma: m.x[0],
                beta: m.x[1],
                energy: m.value,
                evaluations: m.evaluations,
                converged: m.converged,
            })
        })
        .collect::<Result<_>>()?;
    let best = *records
        .iter()
        .reduce(|a, b| if b.energy < a.energy { b } else { a })
        .ok_or_else(|| Error::param("training", "no starting points"))?;
    Ok((records, best))
}

/// Depth-1 angles from a local search started at the origin, plus searches
/// from the best coarse-scan minima when scanning is enabled.
///
/// `template` fixes the input state and mixer; its angles and depth are ignored.
pub fn train_p1(
    model: &IsingModel,
    template: &QaoaCircuit,
    base: &SpinConfig,
    options: &TrainingOptions,
) -> Result<P1Optimum> {
    let ev = Evaluator::new(model, *template, base.clone())?.with_depth(1);
    let mut seeds = vec![(RestartSeed::Origin, [0.0, 0.0])];
    if options.scan_points > 0 {
        for x in scan(&ev, options.scan_points, options.scan_seeds)? {
            seeds.push((RestartSeed::Scan, x));
        }
    }
    let (records, best) = searches(&ev, &seeds, &options.nelder_mead)?;
    Ok(P1Optimum {
        gamma: best.gamma,
        beta: best.beta,
        energy: best.energy,
        searches: records,
    })
}

/// Equal-angle depth-2 searches from `(γ*, β*)`, `(γ*/2, β*)` and
/// `(γ*, β*/2)`, plus the best coarse-scan minima when scanning is enabled.
/// The lowest energy wins, ties to the earlier seed.
pub fn train_p2_equal_angles(
    model: &IsingModel,
    template: &QaoaCircuit,
    base: &SpinConfig,
    p1: &P1Optimum,
    options: &TrainingOptions,
) -> Result<TrainedParams> {
    let ev = Evaluator::new(model, *template, base.clone())?.with_depth(2);
    let (g, b) = (p1.gamma, p1.beta);
    let mut seeds = vec![
        (RestartSeed::P1Optimum, [g, b]),
        (RestartSeed::HalfGamma, [g / 2.0, b]),
        (RestartSeed::HalfBeta, [g, b / 2.0]),
    ];
    if options.scan_points > 0 {
        for x in scan(&ev, options.scan_points, options.scan_seeds)? {
            seeds.push((RestartSeed::Scan, x));
        }
    }
    let (restarts, best) = searches(&ev, &seeds, &options.nelder_mead)?;
    Ok(TrainedParams {
        gamma: best.gamma,
        beta: best.beta,
        energy: best.energy,
        p1: p1.clone(),
        restarts,
    })
}

/// [`train_p1`] followed by [`train_p2_equal_angles`].
pub fn train(
    model: &IsingModel,
    template: &QaoaCircuit,
    base: &SpinConfig,
    options: &TrainingOptions,
) -> Result<TrainedParams> {
    let p1 = train_p1(model, template, base, options)?;
    train_p2_equal_angles(model, template, base, &p1, options)
}
