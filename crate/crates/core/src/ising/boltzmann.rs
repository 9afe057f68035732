use serde::{Deserialize, Serialize};

use super::IsingModel;
use crate::error::{check_temperature, Error, Result};

/// Default cap on `n` for exact enumeration.
pub const BRUTE_FORCE_CAP: usize = 20;

/// Exact Boltzmann distribution `μ(s) ∝ exp(-E(s)/T)` over all `2^n` basis
/// states, indexed like statevector amplitudes. `k_B = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoltzmannDistribution {
    pub temperature: f64,
    pub probabilities: Vec<f64>,
}

impl BoltzmannDistribution {
    pub fn new(model: &IsingModel, temperature: f64) -> Result<Self> {
        Self::with_cap(model, temperature, BRUTE_FORCE_CAP)
    }

    pub fn with_cap(model: &IsingModel, temperature: f64, cap: usize) -> Result<Self> {
        check_temperature(temperature)?;
        if model.n() > cap {
            return Err(Error::TooLarge {
                what: "Boltzmann enumeration",
                n: model.n(),
                cap,
            });
        }
        let energies = model.energy_table()?;
        Ok(Self::from_energies(&energies, temperature))
    }

    /// Normalizes `exp(-E/T)` with a log-sum-exp shift by the minimum energy.
    pub fn from_energies(energies: &[f64], temperature: f64) -> Self {
        let e_min = energies.iter().copied().fold(f64::INFINITY, f64::min);
        let weights: Vec<f64> = energies
            .iter()
            .map(|e| (-(e - e_min) / temperature).exp())
            .collect();
        let z: f64 = weights.iter().sum();
        Self {
            temperature,
            probabilities: weights.into_iter().map(|w| w / z).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ising::generators::{five_node_instance, random_graph};
    use crate::ising::{ProblemGraph, SpinConfig};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn infinite_temperature_is_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_graph(6, 0.5, &mut rng);
        let m = IsingModel::mis(&g, 2.0).unwrap();
        let mu = BoltzmannDistribution::new(&m, 1e9).unwrap();
        for p in &mu.probabilities {
            assert!((p - 1.0 / 64.0).abs() < 1e-6);
        }
    }

    #[test]
    fn degenerate_single_qubit() {
        let m = IsingModel::new(1, vec![0.0], vec![], 0.0, 1.0).unwrap();
        for t in [0.01, 1.0, 100.0] {
            let mu = BoltzmannDistribution::new(&m, t).unwrap();
            assert_eq!(mu.probabilities, vec![0.5, 0.5]);
        }
    }

    #[test]
    fn low_temperature_concentrates_on_ground_state() {
        let g = five_node_instance();
        let m = IsingModel::mis(&g, 2.0).unwrap();
        let mu = BoltzmannDistribution::new(&m, 0.1).unwrap();
        let ground = "10101".parse::<SpinConfig>().unwrap().index();
        assert!(mu.probabilities[ground] > 0.999);
        let (argmax, _) = mu
            .probabilities
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        assert_eq!(argmax, ground);
        // the next level is the five size-two independent sets at E = -2
        let second =
            mu.probabilities[SpinConfig::from_bits(vec![true, false, true, false, false]).index()];
        assert!((second / mu.probabilities[ground] - (-10.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn normalized_and_shift_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_graph(8, 0.3, &mut rng);
        let m = IsingModel::mis(&g, 2.0).unwrap();
        let energies = m.energy_table().unwrap();
        for t in [0.05, 0.7, 30.0] {
            let a = BoltzmannDistribution::from_energies(&energies, t);
            assert!((a.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            let shifted: Vec<f64> = energies.iter().map(|e| e + 1234.5).collect();
            let b = BoltzmannDistribution::from_energies(&shifted, t);
            for (p, q) in a.probabilities.iter().zip(&b.probabilities) {
                assert!((p - q).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = ProblemGraph::new(2, [(0, 1)]).unwrap();
        let m = IsingModel::mis(&g, 2.0).unwrap();
        assert!(BoltzmannDistribution::new(&m, 0.0).is_err());
        assert!(BoltzmannDistribution::new(&m, -1.0).is_err());
        let big = IsingModel::mis(&ProblemGraph::new(21, []).unwrap(), 2.0).unwrap();
        assert!(matches!(
            BoltzmannDistribution::new(&big, 1.0),
            Err(Error::TooLarge { .. })
        ));
    }
}
