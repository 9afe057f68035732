use crate::error::{Error, Result};
use crate::ising::{IsingModel, SpinConfig};
use crate::statevector::{CircuitParams, MixerKind, QaoaCircuit, Statevector, WarmStart, SIM_CAP};

/// `⟨ψ|H_cost|ψ⟩` for the circuit run from `base`, offset included.
pub fn expectation_energy(
    model: &IsingModel,
    circuit: &QaoaCircuit,
    base: &SpinConfig,
) -> Result<f64> {
    Evaluator::new(model, *circuit, base.clone())?.energy(circuit.params.gamma, circuit.params.beta)
}

/// Reusable exact evaluator for one model, circuit shape and base state.
///
/// The template's angles are ignored; each call supplies its own.
#[derive(Debug, Clone)]
pub struct Evaluator {
    energies: Vec<f64>,
    template: QaoaCircuit,
    initial: Statevector,
    mixer_ws: Option<WarmStart>,
}

impl Evaluator {
    pub fn new(model: &IsingModel, template: QaoaCircuit, base: SpinConfig) -> Result<Self> {
        if model.n() > SIM_CAP {
            return Err(Error::TooLarge {
                what: "statevector simulation",
                n: model.n(),
                cap: SIM_CAP,
            });
        }
        base.check_len(model.n())?;
        template.validate()?;
        let initial = template.initial_state(&base)?;
        let mixer_ws = match template.mixer {
            MixerKind::WarmStart => Some(WarmStart::new(base, template.eps_mix)?),
            MixerKind::Standard => None,
        };
        Ok(Self {
            energies: model.energy_table()?,
            template,
            initial,
            mixer_ws,
        })
    }

    pub fn depth(&self) -> usize {
        self.template.depth
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.template.depth = depth;
        self
    }

    pub fn circuit(&self, gamma: f64, beta: f64) -> QaoaCircuit {
        QaoaCircuit {
            params: CircuitParams::new(gamma, beta),
            ..self.template
        }
    }

    pub fn state(&self, gamma: f64, beta: f64) -> Result<Statevector> {
        let mut psi = self.initial.clone();
        for _ in 0..self.template.depth {
            psi.apply_cost_energies(&self.energies, gamma)?;
            psi.apply_mixer_layer(beta, self.template.mixer, self.mixer_ws.as_ref())?;
        }
        Ok(psi)
    }

    pub fn energy(&self, gamma: f64, beta: f64) -> Result<f64> {
        let psi = self.state(gamma, beta)?;
        Ok(psi
            .amplitudes()
            .iter()
            .zip(&self.energies)
            .map(|(a, e)| a.norm_sqr() * e)
            .sum())
    }
}
