//! Dense statevector simulation of the proposal circuits.
//!
//! Amplitude index `i` encodes the basis state whose qubit `j` is bit `j` of
//! `i`; qubit `j` in `|1⟩` means vertex `j` is selected (`x_j = 1`, `z_j = -1`).

mod circuit;

pub use circuit::{
    AnnealingSchedule, CircuitParams, Initialization, MixerKind, PreparedCircuit, QaoaCircuit,
    WarmStart, PROPOSAL_MATRIX_CAP,
};

use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use crate::error::{Error, Result};
use crate::ising::{IsingModel, SpinConfig};

/// Largest qubit count the simulator accepts (2^22 amplitudes, 64 MiB).
pub const SIM_CAP: usize = 22;

/// A 2×2 matrix acting on one qubit, row-major.
pub type Gate = [[Complex64; 2]; 2];

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyGraph)
    } else if n > SIM_CAP {
        Err(Error::TooLarge {
            what: "statevector simulation",
            n,
            cap: SIM_CAP,
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// The computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_qubits(n)?;
        if index >= 1 << n {
            return Err(Error::param(
                "index",
                format!("{index} out of range for {n} qubits"),
            ));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn from_config(config: &SpinConfig) -> Result<Self> {
        Self::basis(config.len(), config.index())
    }

    /// Product state `⊗_j (sqrt(1 - p_j)|0⟩ + sqrt(p_j)|1⟩)`.
    pub fn product(one_probabilities: &[f64]) -> Result<Self> {
        let n = one_probabilities.len();
        check_qubits(n)?;
        let mut amps = Vec::with_capacity(1 << n);
        amps.push(Complex64::new(1.0, 0.0));
        for &p in one_probabilities {
            let (a0, a1) = ((1.0 - p).sqrt(), p.sqrt());
            let half = amps.len();
            amps.extend_from_within(..);
            for a in &mut amps[..half] {
                *a *= a0;
            }
            for a in &mut amps[half..] {
                *a *= a1;
            }
        }
        Ok(Self { n, amps })
    }

    /// The warm-start state for `ws`: each qubit is flipped relative to the
    /// base configuration with probability `ws.eps()`.
    pub fn warm_start(ws: &WarmStart) -> Result<Self> {
        Self::product(&ws.one_probabilities())
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let n = amps.len().trailing_zeros() as usize;
        if amps.len() != 1 << n {
            return Err(Error::param("amplitudes", "length must be a power of two"));
        }
        check_qubits(n)?;
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Statevector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Applies `gate` to qubit `q`.
    pub fn apply_gate(&mut self, q: usize, gate: &Gate) {
        assert!(q < self.n, "qubit {q} out of range");
        let stride = 1usize << q;
        let [[g00, g01], [g10, g11]] = *gate;
        for block in self.amps.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x0, x1) = (*a0, *a1);
                *a0 = g00 * x0 + g01 * x1;
                *a1 = g10 * x0 + g11 * x1;
            }
        }
    }

    /// Multiplies amplitude `i` by `phases[i]`.
    pub fn apply_diagonal(&mut self, phases: &[Complex64]) -> Result<()> {
        if phases.len() != self.amps.len() {
            return Err(Error::LengthMismatch {
                expected: self.amps.len(),
                got: phases.len(),
            });
        }
        for (a, p) in self.amps.iter_mut().zip(phases) {
            *a *= p;
        }
        Ok(())
    }

    /// `exp(-iγ H_cost)` for a diagonal Hamiltonian given by its energies.
    pub fn apply_cost_energies(&mut self, energies: &[f64], gamma: f64) -> Result<()> {
        if energies.len() != self.amps.len() {
            return Err(Error::LengthMismatch {
                expected: self.amps.len(),
                got: energies.len(),
            });
        }
        if gamma == 0.0 {
            return Ok(());
        }
        for (a, e) in self.amps.iter_mut().zip(energies) {
            *a *= Complex64::from_polar(1.0, -gamma * e);
        }
        Ok(())
    }

    /// `exp(-iγ H_cost)` with `H_cost` the model's full energy, offset included.
    pub fn apply_cost_layer(&mut self, model: &IsingModel, gamma: f64) -> Result<()> {
        if model.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: model.n(),
            });
        }
        self.apply_cost_energies(&model.energy_table()?, gamma)
    }

    /// One mixer layer `exp(-iβ H_mix)`.
    ///
    /// `Standard` is `⊗ exp(-iβX)`. `WarmStart` uses, per qubit,
    /// `H_i = -R_y(θ_i) Z R_y(θ_i)†` whose ground state is the warm-start qubit
    /// `R_y(θ_i)|0⟩`, so the warm-start product state is a fixed point up to phase.
    pub fn apply_mixer_layer(
        &mut self,
        beta: f64,
        kind: MixerKind,
        ws: Option<&WarmStart>,
    ) -> Result<()> {
        match kind {
            MixerKind::Standard => {
                let gate = standard_mixer_gate(beta);
                for q in 0..self.n {
                    self.apply_gate(q, &gate);
                }
            }
            MixerKind::WarmStart => {
                let ws =
                    ws.ok_or_else(|| Error::param("mixer", "warm-start mixer needs a warm start"))?;
                ws.base().check_len(self.n)?;
                for (q, p) in ws.one_probabilities().into_iter().enumerate() {
                    self.apply_gate(q, &warm_start_mixer_gate(beta, p));
                }
            }
        }
        Ok(())
    }

    /// `shots` i.i.d. measurement outcomes (basis indices).
    pub fn sample_indices<R: Rng + ?Sized>(&self, shots: usize, rng: &mut R) -> Result<Vec<usize>> {
        if shots == 0 {
            return Err(Error::param("shots", "must be at least 1"));
        }
        let dist = WeightedIndex::new(self.probabilities())
            .map_err(|e| Error::param("statevector", e.to_string()))?;
        Ok((0..shots).map(|_| dist.sample(rng)).collect())
    }

    pub fn sample<R: Rng + ?Sized>(&self, shots: usize, rng: &mut R) -> Result<Vec<SpinConfig>> {
        Ok(self
            .sample_indices(shots, rng)?
            .into_iter()
            .map(|i| SpinConfig::from_index(i, self.n))
            .collect())
    }
}

/// `exp(-iβX) = cos β I - i sin β X`.
pub fn standard_mixer_gate(beta: f64) -> Gate {
    let c = Complex64::new(beta.cos(), 0.0);
    let s = Complex64::new(0.0, -beta.sin());
    [[c, s], [s, c]]
}

/// `exp(iβ(cos θ Z + sin θ X))` where `sin²(θ/2) = p` is the probability of `|1⟩`.
pub fn warm_start_mixer_gate(beta: f64, p: f64) -> Gate {
    let cos_t = 1.0 - 2.0 * p;
    let sin_t = 2.0 * (p * (1.0 - p)).sqrt();
    let (c, s) = (beta.cos(), beta.sin());
    [
        [Complex64::new(c, s * cos_t), Complex64::new(0.0, s * sin_t)],
        [
            Complex64::new(0.0, s * sin_t),
            Complex64::new(c, -s * cos_t),
        ],
    ]
}

#[cfg(test)]
mod tests;
