use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum ShotMode {
    Fixed {
        shots: usize,
    },
    /// `ceil(1/sqrt(υ))` shots for a circuit of noise strength `υ ∈ (0, 1]`.
    NoiseEstimated {
        upsilon: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShotPolicy {
    #[serde(flatten)]
    pub mode: ShotMode,
    pub cap: usize,
}

impl ShotPolicy {
    pub const DEFAULT_CAP: usize = 10_000;

    pub fn fixed(shots: usize) -> Self {
        Self {
            mode: ShotMode::Fixed { shots },
            cap: Self::DEFAULT_CAP.max(shots),
        }
    }

    pub fn noise_estimated(upsilon: f64, cap: usize) -> Self {
        Self {
            mode: ShotMode::NoiseEstimated { upsilon },
            cap,
        }
    }

    pub fn required_shots(&self) -> Result<usize> {
        match self.mode {
            ShotMode::Fixed { shots } => {
                if shots == 0 {
                    Err(Error::param("shots", "must be at least 1"))
                } else {
                    Ok(shots)
                }
            }
            ShotMode::NoiseEstimated { upsilon } => {
                if !(upsilon > 0.0 && upsilon <= 1.0) {
                    return Err(Error::param(
                        "upsilon",
                        format!("must lie in (0, 1], got {upsilon}"),
                    ));
                }
                if self.cap == 0 {
                    return Err(Error::param("shot cap", "must be at least 1"));
                }
                let raw = 1.0 / upsilon.sqrt();
                // snap values within rounding noise of an integer, e.g. 1/sqrt(0.04)
                let nearest = raw.round();
                let shots = if (raw - nearest).abs() <= 1e-9 * nearest {
                    nearest
                } else {
                    raw.ceil()
                };
                Ok(if shots >= self.cap as f64 {
                    self.cap
                } else {
                    shots as usize
                })
            }
        }
    }
}
