use std::sync::Arc;

use rand::seq::index;
use rand::{Rng, RngCore};

use super::{select_from_pool, ProposalOutcome, Proposer};
use crate::error::{Error, Result};
use crate::ising::{IsingModel, SpinConfig};

/// Flips between 1 and `max_flips` distinct bits, the count drawn uniformly.
///
/// With `shots > 1` it draws that many independent candidates and returns one
/// of the `keep_best` lowest-energy ones, which breaks symmetry.
#[derive(Debug, Clone)]
pub struct KFlipProposer {
    model: Arc<IsingModel>,
    max_flips: usize,
    shots: usize,
    keep_best: usize,
}

impl KFlipProposer {
    pub fn new(model: Arc<IsingModel>, max_flips: usize) -> Result<Self> {
        if max_flips == 0 || max_flips > model.n() {
            return Err(Error::param(
                "max_flips",
                format!("must lie in 1..={}, got {max_flips}", model.n()),
            ));
        }
        Ok(Self {
            model,
            max_flips,
            shots: 1,
            keep_best: 1,
        })
    }

    pub fn with_pool(mut self, shots: usize, keep_best: usize) -> Result<Self> {
        if shots == 0 || keep_best == 0 {
            return Err(Error::param("shots/keep_best", "must be at least 1"));
        }
        self.shots = shots;
        self.keep_best = keep_best;
        Ok(self)
    }

    fn draw<R: Rng + ?Sized>(&self, current: &SpinConfig, rng: &mut R) -> SpinConfig {
        let flips = rng.gen_range(1..=self.max_flips);
        let mut candidate = current.clone();
        for i in index::sample(rng, current.len(), flips) {
            candidate.flip(i);
        }
        candidate
    }
}

impl Proposer for KFlipProposer {
    fn propose(&self, current: &SpinConfig, rng: &mut dyn RngCore) -> Result<ProposalOutcome> {
        current.check_len(self.model.n())?;
        if self.shots == 1 {
            return Ok(ProposalOutcome::new(current, self.draw(current, rng), 1));
        }
        let samples: Vec<SpinConfig> = (0..self.shots).map(|_| self.draw(current, rng)).collect();
        let energies = samples
            .iter()
            .map(|s| self.model.energy(s))
            .collect::<Result<Vec<_>>>()?;
        let (candidate, pool) = select_from_pool(samples, &energies, self.keep_best, rng);
        let mut out = ProposalOutcome::new(current, candidate, self.shots);
        out.pool_energies = Some(pool);
        Ok(out)
    }

    fn is_symmetric(&self) -> bool {
        self.shots == 1
    }

    fn name(&self) -> &'static str {
        "k-flip"
    }
}

/// Deterministic steepest descent over the Hamming ball of radius 1 or 2.
///
/// Neighbors are scanned single flips first (ascending index), then pairs in
/// lexicographic order; only a strictly lower energy replaces the incumbent.
#[derive(Debug, Clone)]
pub struct LocalSearchProposer {
    model: Arc<IsingModel>,
    distance: usize,
}

impl LocalSearchProposer {
    pub fn new(model: Arc<IsingModel>, distance: usize) -> Result<Self> {
        if !(1..=2).contains(&distance) {
            return Err(Error::param(
                "distance",
                format!("must be 1 or 2, got {distance}"),
            ));
        }
        Ok(Self { model, distance })
    }
}

impl Proposer for LocalSearchProposer {
    fn propose(&self, current: &SpinConfig, _rng: &mut dyn RngCore) -> Result<ProposalOutcome> {
        let n = self.model.n();
        let mut best_energy = self.model.energy(current)?;
        let mut best = current.clone();
        let mut probe = current.clone();
        let mut consider = |probe: &SpinConfig| -> Result<()> {
            let e = self.model.energy(probe)?;
            if e < best_energy {
                best_energy = e;
                best = probe.clone();
            }
            Ok(())
        };
        for i in 0..n {
            probe.flip(i);
            consider(&probe)?;
            probe.flip(i);
        }
        if self.distance == 2 {
            for i in 0..n {
                probe.flip(i);
                for j in i + 1..n {
                    probe.flip(j);
                    consider(&probe)?;
                    probe.flip(j);
                }
                probe.flip(i);
            }
        }
        Ok(ProposalOutcome::new(current, best, 1))
    }

    fn name(&self) -> &'static str {
        "local-search"
    }
}
