use rand::RngCore;

use super::{select_from_pool, ProposalOutcome, Proposer};
use crate::error::{Error, Result};
use crate::ising::{IsingModel, SpinConfig};
use crate::statevector::{PreparedCircuit, QaoaCircuit};

/// Samples a QAOA circuit warm-started at the current configuration and
/// returns one of the `keep_best` lowest-energy shots.
///
/// The circuit may be built from a reduced model while shots are ranked on
/// the full one.
#[derive(Debug, Clone)]
pub struct QuantumProposer {
    prepared: PreparedCircuit,
    energies: Vec<f64>,
    shots: usize,
    keep_best: usize,
}

impl QuantumProposer {
    pub fn new(
        model: &IsingModel,
        circuit_model: &IsingModel,
        circuit: QaoaCircuit,
        shots: usize,
        keep_best: usize,
    ) -> Result<Self> {
        if model.n() != circuit_model.n() {
            return Err(Error::LengthMismatch {
                expected: model.n(),
                got: circuit_model.n(),
            });
        }
        if shots == 0 || keep_best == 0 {
            return Err(Error::param("shots/keep_best", "must be at least 1"));
        }
        Ok(Self {
            prepared: circuit.prepare(circuit_model)?,
            energies: model.energy_table()?,
            shots,
            keep_best,
        })
    }

    pub fn circuit(&self) -> &QaoaCircuit {
        self.prepared.circuit()
    }

    pub fn shots(&self) -> usize {
        self.shots
    }

    pub fn keep_best(&self) -> usize {
        self.keep_best
    }
}

impl Proposer for QuantumProposer {
    fn propose(&self, current: &SpinConfig, rng: &mut dyn RngCore) -> Result<ProposalOutcome> {
        let n = self.prepared.n();
        current.check_len(n)?;
        let state = self.prepared.apply(current)?;
        let indices = state.sample_indices(self.shots, rng)?;
        let energies: Vec<f64> = indices.iter().map(|&i| self.energies[i]).collect();
        let samples = indices
            .iter()
            .map(|&i| SpinConfig::from_index(i, n))
            .collect();
        let (candidate, pool) = select_from_pool(samples, &energies, self.keep_best, rng);
        let mut out = ProposalOutcome::new(current, candidate, self.shots);
        out.pool_energies = Some(pool);
        Ok(out)
    }

    fn name(&self) -> &'static str {
        "quantum"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ising::generators::{five_node_instance, path};
    use crate::ising::ProblemGraph;
    use crate::statevector::CircuitParams;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn edge_model() -> IsingModel {
        IsingModel::mis(&ProblemGraph::new(2, [(0, 1)]).unwrap(), 2.0).unwrap()
    }

    /// Re-draws the same shots with a cloned generator to recover the multiset.
    fn replay(p: &QuantumProposer, model: &IsingModel, s: &SpinConfig, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let state = p.circuit().apply(model, s).unwrap();
        let mut e: Vec<f64> = state
            .sample_indices(p.shots(), &mut rng)
            .unwrap()
            .into_iter()
            .map(|i| model.energy_of_index(i))
            .collect();
        e.sort_by(f64::total_cmp);
        e
    }

    #[test]
    fn candidate_within_tenth_order_statistic() {
        let model = edge_model();
        let circuit = QaoaCircuit::warm_start(CircuitParams::new(0.3, 0.4), 0.25);
        let p = QuantumProposer::new(&model, &model, circuit, 1000, 10).unwrap();
        for (seed, s) in [(7u64, "00"), (8, "11"), (9, "10")] {
            let s: SpinConfig = s.parse().unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let out = p.propose(&s, &mut rng).unwrap();
            let sorted = replay(&p, &model, &s, seed);
            let e = model.energy(&out.candidate).unwrap();
            assert!(e <= sorted[9]);
            assert_eq!(out.pool_energies.unwrap(), sorted[..10].to_vec());
            assert_eq!(out.shots_used, 1000);
        }
    }

    #[test]
    fn best_sample_is_minimum() {
        let model = IsingModel::mis(&five_node_instance(), 2.0).unwrap();
        let circuit = QaoaCircuit::warm_start(CircuitParams::new(0.5, 0.6), 0.2);
        let p = QuantumProposer::new(&model, &model, circuit, 64, 1).unwrap();
        let s: SpinConfig = "01000".parse().unwrap();
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let out = p.propose(&s, &mut rng).unwrap();
            let sorted = replay(&p, &model, &s, seed);
            assert_eq!(model.energy(&out.candidate).unwrap(), sorted[0]);
        }
    }

    #[test]
    fn full_pool_is_uniform_over_shots() {
        let model = IsingModel::mis(&path(3), 2.0).unwrap();
        let circuit = QaoaCircuit::warm_start(CircuitParams::new(0.4, 0.7), 0.3);
        let p = QuantumProposer::new(&model, &model, circuit, 5, 5).unwrap();
        let s: SpinConfig = "010".parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let out = p.propose(&s, &mut rng).unwrap();
        assert_eq!(out.pool_energies.as_ref().unwrap().len(), 5);
        assert_eq!(out.hamming_distance, s.hamming_distance(&out.candidate));
    }

    #[test]
    fn deterministic_under_seed() {
        let model = IsingModel::mis(&five_node_instance(), 2.0).unwrap();
        let circuit = QaoaCircuit::warm_start(CircuitParams::new(0.5, 0.6), 0.2);
        let p = QuantumProposer::new(&model, &model, circuit, 100, 10).unwrap();
        let s = SpinConfig::zeros(5);
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..10)
                .map(|_| p.propose(&s, &mut rng).unwrap().candidate)
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(3), draw(3));
    }

    #[test]
    fn rejects_mismatched_models() {
        let circuit = QaoaCircuit::warm_start(CircuitParams::new(0.5, 0.6), 0.2);
        let small = edge_model();
        let big = IsingModel::mis(&path(3), 2.0).unwrap();
        assert!(QuantumProposer::new(&small, &big, circuit, 10, 1).is_err());
        assert!(QuantumProposer::new(&small, &small, circuit, 0, 1).is_err());
    }
}
