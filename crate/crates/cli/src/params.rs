//! The trained-parameter file written by `train` and read by `solve`.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use qemis_core::training::LambdaDiagnostic;
use qemis_core::{QaoaCircuit, SpinConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub config_hash: String,
    pub instance: String,
    pub n: usize,
    pub lambda: f64,
    pub gamma: f64,
    pub beta: f64,
    /// Depth-2 expectation at `(gamma, beta)`.
    pub energy: f64,
    pub base: SpinConfig,
    /// Angles are zero in the template; `gamma`/`beta` above apply.
    pub circuit: QaoaCircuit,
    /// Whether training saw the full model or the SWAP-simplified one.
    pub trained_on_full_model: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambda_scan: Vec<LambdaRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaRow {
    pub lambda: f64,
    pub objective: f64,
    pub constraint: f64,
    pub mismatch: f64,
    pub gamma: f64,
    pub beta: f64,
    pub energy: f64,
}

impl From<&LambdaDiagnostic> for LambdaRow {
    fn from(d: &LambdaDiagnostic) -> Self {
        Self {
            lambda: d.lambda,
            objective: d.objective,
            constraint: d.constraint,
            mismatch: d.mismatch,
            gamma: d.trained.gamma,
            beta: d.trained.beta,
            energy: d.trained.energy,
        }
    }
}

impl ParamsFile {
    pub fn to_text(&self) -> Result<String> {
        toml::to_string(self).context("serializing parameter file")
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).context("parsing parameter file")
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qemis_core::CircuitParams;

    #[test]
    fn text_round_trip_is_bit_exact() {
        let p = ParamsFile {
            config_hash: "ab".into(),
            instance: "g".into(),
            n: 3,
            lambda: 2.0,
            gamma: 0.1 + 0.2,
            beta: -1.0 / 3.0,
            energy: std::f64::consts::PI,
            base: "101".parse().unwrap(),
            circuit: QaoaCircuit::warm_start(CircuitParams::new(0.0, 0.0), 0.25),
            trained_on_full_model: false,
            lambda_scan: vec![LambdaRow {
                lambda: 1.5,
                objective: -0.7,
                constraint: 1e-17,
                mismatch: 0.123456789012345678,
                gamma: 5e-324,
                beta: 0.0,
                energy: -2.5,
            }],
        };
        let back = ParamsFile::parse(&p.to_text().unwrap()).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.gamma.to_bits(), p.gamma.to_bits());
        assert_eq!(
            back.lambda_scan[0].gamma.to_bits(),
            p.lambda_scan[0].gamma.to_bits()
        );
    }
}
