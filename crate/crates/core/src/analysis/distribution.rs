use crate::error::{Error, Result};
use crate::ising::{IsingModel, SpinConfig};
use crate::mcmc::Replica;
use crate::proposals::Proposer;
use crate::rng::stream;

use super::transition::TRANSITION_CAP;

const NORMALIZATION_TOL: f64 = 1e-8;

/// `½ Σ |p_i - q_i|`.
pub fn total_variation(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    for (name, d) in [("p", p), ("q", q)] {
        let sum: f64 = d.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL || d.iter().any(|&x| x < 0.0) {
            return Err(Error::param(
                name,
                format!("not a distribution (sums to {sum})"),
            ));
        }
    }
    Ok(0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

fn chain(
    model: &IsingModel,
    temperature: f64,
    seed: u64,
) -> Result<(Replica, crate::rng::ChainRng)> {
    if model.n() > TRANSITION_CAP {
        return Err(Error::TooLarge {
            what: "empirical distribution",
            n: model.n(),
            cap: TRANSITION_CAP,
        });
    }
    let mut rng = stream(seed, 1);
    let start = SpinConfig::random(model.n(), &mut rng);
    Ok((Replica::new(0, temperature, start, model)?, rng))
}

/// Normalized histogram of the states after steps `burn_in + 1 ..= steps`
/// of a single Metropolis-Hastings chain started uniformly at random.
pub fn empirical_chain_distribution(
    model: &IsingModel,
    temperature: f64,
    proposer: &dyn Proposer,
    steps: u64,
    burn_in: u64,
    seed: u64,
) -> Result<Vec<f64>> {
    if steps <= burn_in {
        return Err(Error::param(
            "steps",
            format!("must exceed burn_in ({burn_in}), got {steps}"),
        ));
    }
    let (mut replica, mut rng) = chain(model, temperature, seed)?;
    let mut counts = vec![0u64; 1 << model.n()];
    for t in 1..=steps {
        replica.step(proposer, model, &mut rng)?;
        if t > burn_in {
            counts[replica.current().index()] += 1;
        }
    }
    let total = (steps - burn_in) as f64;
    Ok(counts.into_iter().map(|c| c as f64 / total).collect())
}

/// TV distance between `target` and the running histogram of one chain
/// (no burn-in), read at each checkpoint. Checkpoints must be increasing.
pub fn tv_curve(
    model: &IsingModel,
    temperature: f64,
    proposer: &dyn Proposer,
    target: &[f64],
    checkpoints: &[u64],
    seed: u64,
) -> Result<Vec<(u64, f64)>> {
    if checkpoints.first() == Some(&0) || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param(
            "checkpoints",
            "must be positive and strictly increasing",
        ));
    }
    let (mut replica, mut rng) = chain(model, temperature, seed)?;
    let mut counts = vec![0u64; 1 << model.n()];
    if target.len() != counts.len() {
        return Err(Error::LengthMismatch {
            expected: counts.len(),
            got: target.len(),
        });
    }
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut t = 0;
    for &checkpoint in checkpoints {
        while t < checkpoint {
            replica.step(proposer, model, &mut rng)?;
            counts[replica.current().index()] += 1;
            t += 1;
        }
        let hist: Vec<f64> = counts.iter().map(|&c| c as f64 / t as f64).collect();
        out.push((t, total_variation(&hist, target)?));
    }
    Ok(out)
}
