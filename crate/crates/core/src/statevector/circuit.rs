use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Statevector;
use crate::error::{Error, Result};
use crate::ising::{IsingModel, SpinConfig};

/// Largest `n` for which full `2^n × 2^n` proposal matrices are built.
pub const PROPOSAL_MATRIX_CAP: usize = 12;

/// A softened copy of a configuration.
///
/// Qubit `i` is `|1⟩` with probability `1 - eps` if `base_i = 1` and `eps`
/// otherwise; the matching rotation angle is `θ_i = 2 asin(sqrt(p_i))`.
#[derive(Debug, Clone, PartialEq)]
pub struct WarmStart {
    base: SpinConfig,
    eps: f64,
}

impl WarmStart {
    /// `eps = 0` gives the basis state of `base`, `eps = 1/2` the uniform state.
    pub fn new(base: SpinConfig, eps: f64) -> Result<Self> {
        check_eps(eps)?;
        Ok(Self { base, eps })
    }

    pub fn base(&self) -> &SpinConfig {
        &self.base
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Softened bits `s̃_i`.
    pub fn one_probabilities(&self) -> Vec<f64> {
        self.base
            .bits()
            .iter()
            .map(|&b| if b { 1.0 - self.eps } else { self.eps })
            .collect()
    }

    pub fn thetas(&self) -> Vec<f64> {
        self.one_probabilities()
            .into_iter()
            .map(|p| 2.0 * p.sqrt().asin())
            .collect()
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if (0.0..=0.5).contains(&eps) {
        Ok(())
    } else {
        Err(Error::param(
            "eps",
            format!("must lie in [0, 1/2], got {eps}"),
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MixerKind {
    /// `H_mix = Σ X_i`.
    Standard,
    /// Per-qubit mixer aligned with the warm-start state.
    WarmStart,
}

/// Inputs of the first-order Trotter angle derivation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealingSchedule {
    pub kappa: f64,
    pub time: f64,
    pub alpha: f64,
}

/// Equal-angle layer parameters: every layer uses the same `(γ, β)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircuitParams {
    pub gamma: f64,
    pub beta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<AnnealingSchedule>,
}

impl CircuitParams {
    pub fn new(gamma: f64, beta: f64) -> Self {
        Self {
            gamma,
            beta,
            schedule: None,
        }
    }

    /// Two identical Trotter steps of `exp(-it[(1-κ)α H_cost + κ H_mix])`:
    /// `γ = (t/2)(1-κ)α`, `β = (t/2)κ`.
    pub fn from_schedule(kappa: f64, time: f64, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&kappa) {
            return Err(Error::param(
                "kappa",
                format!("must lie in [0, 1], got {kappa}"),
            ));
        }
        if !time.is_finite() || !alpha.is_finite() {
            return Err(Error::param("schedule", "time and alpha must be finite"));
        }
        Ok(Self {
            gamma: time / 2.0 * (1.0 - kappa) * alpha,
            beta: time / 2.0 * kappa,
            schedule: Some(AnnealingSchedule { kappa, time, alpha }),
        })
    }
}

/// How the circuit's input state is built from the chain's configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Initialization {
    /// The basis state `|s⟩`.
    Basis,
    /// The warm-start product state around `s`.
    WarmStart { eps: f64 },
}

/// `U = Π_layers exp(-iβ H_mix) exp(-iγ H_cost)` applied to a state built from `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QaoaCircuit {
    pub params: CircuitParams,
    pub depth: usize,
    pub mixer: MixerKind,
    pub init: Initialization,
    /// Regularization of the warm-start mixer; unused by the standard mixer.
    pub eps_mix: f64,
}

impl QaoaCircuit {
    /// The proposal circuit: depth 2, warm-start input and aligned mixer with the same `eps`.
    pub fn warm_start(params: CircuitParams, eps: f64) -> Self {
        Self::warm_start_split(params, eps, eps)
    }

    pub fn warm_start_split(params: CircuitParams, eps_init: f64, eps_mix: f64) -> Self {
        Self {
            params,
            depth: 2,
            mixer: MixerKind::WarmStart,
            init: Initialization::WarmStart { eps: eps_init },
            eps_mix,
        }
    }

    /// Depth 2, basis-state input, standard mixer.
    pub fn basis(params: CircuitParams) -> Self {
        Self {
            params,
            depth: 2,
            mixer: MixerKind::Standard,
            init: Initialization::Basis,
            eps_mix: 0.0,
        }
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if let Initialization::WarmStart { eps } = self.init {
            check_eps(eps)?;
        }
        if self.mixer == MixerKind::WarmStart {
            check_eps(self.eps_mix)?;
        }
        if !self.params.gamma.is_finite() || !self.params.beta.is_finite() {
            return Err(Error::param("angles", "must be finite"));
        }
        Ok(())
    }

    pub fn initial_state(&self, base: &SpinConfig) -> Result<Statevector> {
        match self.init {
            Initialization::Basis => Statevector::from_config(base),
            Initialization::WarmStart { eps } => {
                Statevector::warm_start(&WarmStart::new(base.clone(), eps)?)
            }
        }
    }

    /// Runs the circuit from `base` on a model.
    pub fn apply(&self, model: &IsingModel, base: &SpinConfig) -> Result<Statevector> {
        self.prepare(model)?.apply(base)
    }

    /// Precomputes the cost-layer phases for repeated use on one model.
    pub fn prepare(&self, model: &IsingModel) -> Result<PreparedCircuit> {
        self.validate()?;
        if model.n() > super::SIM_CAP {
            return Err(Error::TooLarge {
                what: "statevector simulation",
                n: model.n(),
                cap: super::SIM_CAP,
            });
        }
        let gamma = self.params.gamma;
        let phases = model
            .energy_table()?
            .into_iter()
            .map(|e| Complex64::from_polar(1.0, -gamma * e))
            .collect();
        Ok(PreparedCircuit {
            circuit: *self,
            n: model.n(),
            phases,
        })
    }

    /// `⟨s'|U|ψ(s)⟩` where `ψ(s)` is the circuit's input state for `s`.
    pub fn transition_amplitude(
        &self,
        model: &IsingModel,
        s: &SpinConfig,
        s_prime: &SpinConfig,
    ) -> Result<Complex64> {
        s_prime.check_len(model.n())?;
        Ok(self.apply(model, s)?.amplitude(s_prime.index()))
    }

    /// Exact proposal matrix: column `s` is the outcome distribution of the
    /// circuit started from `s`.
    pub fn proposal_matrix(&self, model: &IsingModel) -> Result<Array2<f64>> {
        let n = model.n();
        if n > PROPOSAL_MATRIX_CAP {
            return Err(Error::TooLarge {
                what: "proposal matrix",
                n,
                cap: PROPOSAL_MATRIX_CAP,
            });
        }
        let prepared = self.prepare(model)?;
        let dim = 1usize << n;
        let columns: Vec<Vec<f64>> = (0..dim)
            .into_par_iter()
            .map(|s| {
                prepared
                    .apply(&SpinConfig::from_index(s, n))
                    .map(|psi| psi.probabilities())
            })
            .collect::<Result<_>>()?;
        Ok(Array2::from_shape_fn((dim, dim), |(to, from)| {
            columns[from][to]
        }))
    }
}

/// A circuit bound to one model, with cost phases `exp(-iγE(i))` cached.
#[derive(Debug, Clone)]
pub struct PreparedCircuit {
    circuit: QaoaCircuit,
    n: usize,
    phases: Vec<Complex64>,
}

impl PreparedCircuit {
    pub fn circuit(&self) -> &QaoaCircuit {
        &self.circuit
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apply(&self, base: &SpinConfig) -> Result<Statevector> {
        base.check_len(self.n)?;
        let c = &self.circuit;
        let mut psi = c.initial_state(base)?;
        let mixer_ws = match c.mixer {
            MixerKind::WarmStart => Some(WarmStart::new(base.clone(), c.eps_mix)?),
            MixerKind::Standard => None,
        };
        for _ in 0..c.depth {
            if c.params.gamma != 0.0 {
                psi.apply_diagonal(&self.phases)?;
            }
            psi.apply_mixer_layer(c.params.beta, c.mixer, mixer_ws.as_ref())?;
        }
        Ok(psi)
    }
}
