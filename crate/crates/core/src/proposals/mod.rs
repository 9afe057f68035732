//! Proposal distributions for the Metropolis-Hastings chains.
//!
//! Every proposer maps the chain's current configuration to a candidate.
//! Only [`KFlipProposer`] with a single shot is symmetric; the others are
//! used as heuristics and the chain treats them as if they were.

mod classical;
mod matrix;
mod quantum;
mod shots;

pub use classical::{KFlipProposer, LocalSearchProposer};
pub use matrix::MatrixProposer;
pub use quantum::QuantumProposer;
pub use shots::{ShotMode, ShotPolicy};

use std::sync::Arc;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ising::{IsingModel, SpinConfig};
use crate::statevector::QaoaCircuit;

#[derive(Debug, Clone, PartialEq)]
pub struct ProposalOutcome {
    pub candidate: SpinConfig,
    pub shots_used: usize,
    /// Energies of the kept low-energy pool, ascending, when a pool was formed.
    pub pool_energies: Option<Vec<f64>>,
    pub hamming_distance: usize,
}

impl ProposalOutcome {
    pub(crate) fn new(current: &SpinConfig, candidate: SpinConfig, shots_used: usize) -> Self {
        Self {
            hamming_distance: current.hamming_distance(&candidate),
            candidate,
            shots_used,
            pool_energies: None,
        }
    }
}

pub trait Proposer: Send + Sync {
    fn propose(&self, current: &SpinConfig, rng: &mut dyn RngCore) -> Result<ProposalOutcome>;

    /// Whether `Q(s'|s) = Q(s|s')` holds exactly.
    fn is_symmetric(&self) -> bool {
        false
    }

    fn name(&self) -> &'static str;
}

/// Declarative description of a proposer, as stored in run configurations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProposalSpec {
    KFlip {
        max_flips: usize,
        #[serde(default = "one")]
        shots: usize,
        #[serde(default = "one")]
        keep_best: usize,
    },
    LocalSearch {
        distance: usize,
    },
    Quantum {
        circuit: QaoaCircuit,
        shots: ShotPolicy,
        keep_best: usize,
    },
}

fn one() -> usize {
    1
}

impl ProposalSpec {
    /// Builds the proposer. Candidates are ranked on `model`; circuits are
    /// simulated on `circuit_model` when given (e.g. a SWAP-simplified model).
    pub fn build(
        &self,
        model: Arc<IsingModel>,
        circuit_model: Option<&IsingModel>,
    ) -> Result<Arc<dyn Proposer>> {
        Ok(match self {
            ProposalSpec::KFlip {
                max_flips,
                shots,
                keep_best,
            } => Arc::new(KFlipProposer::new(model, *max_flips)?.with_pool(*shots, *keep_best)?),
            ProposalSpec::LocalSearch { distance } => {
                Arc::new(LocalSearchProposer::new(model, *distance)?)
            }
            ProposalSpec::Quantum {
                circuit,
                shots,
                keep_best,
            } => {
                let circuit_model = circuit_model.unwrap_or(&model);
                Arc::new(QuantumProposer::new(
                    &model,
                    circuit_model,
                    *circuit,
                    shots.required_shots()?,
                    *keep_best,
                )?)
            }
        })
    }

    /// Shots drawn per proposal.
    pub fn shots_per_proposal(&self) -> Result<usize> {
        match self {
            ProposalSpec::KFlip { shots, .. } => Ok(*shots),
            ProposalSpec::LocalSearch { .. } => Ok(1),
            ProposalSpec::Quantum { shots, .. } => shots.required_shots(),
        }
    }
}

/// Keeps the `keep` lowest-energy samples (ties by draw order, duplicates
/// counted) and returns one of them uniformly at random, plus the pool energies.
pub fn select_from_pool<R: Rng + ?Sized>(
    samples: Vec<SpinConfig>,
    energies: &[f64],
    keep: usize,
    rng: &mut R,
) -> (SpinConfig, Vec<f64>) {
    debug_assert_eq!(samples.len(), energies.len());
    debug_assert!(!samples.is_empty() && keep >= 1);
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| energies[a].total_cmp(&energies[b]).then(a.cmp(&b)));
    order.truncate(keep.min(samples.len()));
    let pick = order[rng.gen_range(0..order.len())];
    let pool = order.iter().map(|&i| energies[i]).collect();
    let mut samples = samples;
    (samples.swap_remove(pick), pool)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pool_selection_respects_order_statistic() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let samples: Vec<SpinConfig> = (0..6).map(|i| SpinConfig::from_index(i, 3)).collect();
        let energies = [3.0, -1.0, 2.0, -1.0, 0.0, 5.0];
        for _ in 0..100 {
            let (c, pool) = select_from_pool(samples.clone(), &energies, 2, &mut rng);
            assert_eq!(pool, vec![-1.0, -1.0]);
            assert!(c.index() == 1 || c.index() == 3);
        }
        let (c, pool) = select_from_pool(samples.clone(), &energies, 1, &mut rng);
        assert_eq!(c.index(), 1);
        assert_eq!(pool, vec![-1.0]);
        let (_, pool) = select_from_pool(samples, &energies, 100, &mut rng);
        assert_eq!(pool.len(), 6);
    }
}
