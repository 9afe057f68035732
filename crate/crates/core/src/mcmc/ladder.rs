use serde::{Deserialize, Serialize};

use crate::error::{check_temperature, Error, Result};
use crate::ising::IsingModel;

/// Strictly increasing, positive temperatures; slot 0 is the coldest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct TemperatureLadder {
    temperatures: Vec<f64>,
}

impl TemperatureLadder {
    pub fn explicit(temperatures: Vec<f64>) -> Result<Self> {
        if temperatures.is_empty() {
            return Err(Error::param("ladder", "needs at least one temperature"));
        }
        for &t in &temperatures {
            check_temperature(t)?;
        }
        if temperatures.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::param(
                "ladder",
                "temperatures must be strictly increasing",
            ));
        }
        Ok(Self { temperatures })
    }

    /// `T_i = t_low (t_high / t_low)^(i / (replicas - 1))` with exact endpoints.
    pub fn geometric(t_low: f64, t_high: f64, replicas: usize) -> Result<Self> {
        check_temperature(t_low)?;
        check_temperature(t_high)?;
        if t_low >= t_high {
            return Err(Error::param(
                "ladder",
                format!("need t_low < t_high, got {t_low} >= {t_high}"),
            ));
        }
        if replicas < 2 {
            return Err(Error::param(
                "ladder",
                "a geometric ladder needs at least two replicas",
            ));
        }
        let ratio = t_high / t_low;
        let last = replicas - 1;
        let mut temperatures: Vec<f64> = (0..replicas)
            .map(|i| t_low * ratio.powf(i as f64 / last as f64))
            .collect();
        temperatures[last] = t_high;
        Self::explicit(temperatures)
    }

    pub fn temperatures(&self) -> &[f64] {
        &self.temperatures
    }

    pub fn len(&self) -> usize {
        self.temperatures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.temperatures.is_empty()
    }
}

impl TryFrom<Vec<f64>> for TemperatureLadder {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::explicit(v)
    }
}

impl From<TemperatureLadder> for Vec<f64> {
    fn from(l: TemperatureLadder) -> Self {
        l.temperatures
    }
}

/// Configuration-file form of a ladder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LadderSpec {
    Geometric {
        t_low: f64,
        t_high: f64,
        replicas: usize,
    },
    /// Geometric ladder whose hot end comes from the spectrum of the model.
    Spectral {
        t_low: f64,
        p_high: f64,
        replicas: usize,
        #[serde(default)]
        rule: XMaxRule,
    },
    Explicit {
        temperatures: Vec<f64>,
    },
}

impl LadderSpec {
    /// `model` is only consulted by the spectral variant.
    pub fn build(&self, model: &IsingModel) -> Result<TemperatureLadder> {
        match self {
            LadderSpec::Geometric {
                t_low,
                t_high,
                replicas,
            } => TemperatureLadder::geometric(*t_low, *t_high, *replicas),
            LadderSpec::Spectral {
                t_low,
                p_high,
                replicas,
                rule,
            } => {
                let t_high = t_high_from_spectrum(x_max(model, *rule)?, *p_high)?;
                TemperatureLadder::geometric(*t_low, t_high, *replicas)
            }
            LadderSpec::Explicit { temperatures } => {
                TemperatureLadder::explicit(temperatures.clone())
            }
        }
    }

    pub fn replicas(&self) -> usize {
        match self {
            LadderSpec::Geometric { replicas, .. } | LadderSpec::Spectral { replicas, .. } => {
                *replicas
            }
            LadderSpec::Explicit { temperatures } => temperatures.len(),
        }
    }
}

/// `T_high = |x_max / ln p_high|`.
pub fn t_high_from_spectrum(x_max: f64, p_high: f64) -> Result<f64> {
    if !(p_high > 0.0 && p_high < 1.0) {
        return Err(Error::param(
            "p_high",
            format!("must lie in (0, 1), got {p_high}"),
        ));
    }
    if !x_max.is_finite() {
        return Err(Error::param("x_max", "must be finite"));
    }
    Ok((x_max / p_high.ln()).abs())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum XMaxRule {
    /// Largest `|E(s)|`.
    #[default]
    Magnitude,
    /// Largest signed `E(s)`.
    Signed,
}

/// Extreme of the diagonal cost spectrum by enumeration.
pub fn x_max(model: &IsingModel, rule: XMaxRule) -> Result<f64> {
    let table = model.energy_table()?;
    Ok(match rule {
        XMaxRule::Magnitude => table.iter().fold(0.0, |m, e| m.max(e.abs())),
        XMaxRule::Signed => table.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ising::generators::random_graph;
    use crate::ising::SpinConfig;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn geometric_examples() {
        let l = TemperatureLadder::geometric(0.2, 3.0, 2).unwrap();
        assert_eq!(l.temperatures(), &[0.2, 3.0]);
        let l = TemperatureLadder::geometric(0.01, 1.0, 3).unwrap();
        let t = l.temperatures();
        assert_eq!(t[0], 0.01);
        assert!((t[1] - 0.1).abs() < 1e-15);
        assert_eq!(t[2], 1.0);
        let l = TemperatureLadder::geometric(0.01, 5.0, 7).unwrap();
        let t = l.temperatures();
        let r = t[1] / t[0];
        assert!(t.windows(2).all(|w| (w[1] / w[0] - r).abs() < 1e-12));
    }

    #[test]
    fn ladder_validation() {
        assert!(TemperatureLadder::geometric(1.0, 1.0, 3).is_err());
        assert!(TemperatureLadder::geometric(0.0, 1.0, 3).is_err());
        assert!(TemperatureLadder::geometric(0.1, 1.0, 1).is_err());
        assert!(TemperatureLadder::explicit(vec![]).is_err());
        assert!(TemperatureLadder::explicit(vec![0.1, 0.1]).is_err());
        assert!(TemperatureLadder::explicit(vec![-0.1, 0.1]).is_err());
        assert!(TemperatureLadder::explicit(vec![0.4]).is_ok());
    }

    #[test]
    fn explicit_ladder_from_largest_experiment() {
        let temps = vec![0.01, 0.11, 0.21, 0.51, 1.01];
        let l = TemperatureLadder::explicit(temps.clone()).unwrap();
        assert_eq!(l.temperatures(), temps.as_slice());
        let json = serde_json::to_string(&l).unwrap();
        assert_eq!(serde_json::from_str::<TemperatureLadder>(&json).unwrap(), l);
        assert!(serde_json::from_str::<TemperatureLadder>("[1.0, 0.5]").is_err());
    }

    #[test]
    fn t_high_examples() {
        assert!((t_high_from_spectrum(2f64.ln(), 0.5).unwrap() - 1.0).abs() < 1e-15);
        let t = t_high_from_spectrum(3.0, 0.999999).unwrap();
        assert!((t / 3e6 - 1.0).abs() < 1e-5);
        assert!(t_high_from_spectrum(3.0, 1.0).is_err());
        assert!(t_high_from_spectrum(3.0, 0.0).is_err());
        assert!(t_high_from_spectrum(f64::INFINITY, 0.5).is_err());
    }

    #[test]
    fn x_max_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_graph(10, 0.4, &mut rng);
        let model = IsingModel::mis(&g, 2.0).unwrap();
        let mut brute = 0.0f64;
        for idx in 0..1 << 10 {
            let e = model.energy(&SpinConfig::from_index(idx, 10)).unwrap();
            brute = brute.max(e.abs());
        }
        let xm = x_max(&model, XMaxRule::Magnitude).unwrap();
        assert_eq!(xm, brute);
        let t = t_high_from_spectrum(xm, 0.5).unwrap();
        assert!((t - brute / 2f64.ln()).abs() < 1e-12);
        let spec = LadderSpec::Spectral {
            t_low: 0.01,
            p_high: 0.5,
            replicas: 4,
            rule: XMaxRule::Magnitude,
        };
        let l = spec.build(&model).unwrap();
        assert_eq!(l.temperatures()[3], t);
        assert!(x_max(&model, XMaxRule::Signed).unwrap() <= xm);
    }
}
