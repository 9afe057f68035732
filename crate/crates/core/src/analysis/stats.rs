use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mcmc::RunResult;

/// Per-run figures kept for statistics and CSV output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub run_id: u64,
    pub seed: u64,
    pub converged: bool,
    pub iterations: u64,
    pub convergence_iterations: Vec<Option<u64>>,
    pub best_energy: f64,
    pub total_shots: u64,
}

impl RunSummary {
    pub fn from_result(run_id: u64, seed: u64, result: &RunResult) -> Self {
        Self {
            run_id,
            seed,
            converged: result.converged,
            iterations: result.iterations,
            convergence_iterations: result.convergence_iterations.clone(),
            best_energy: result.best_energy,
            total_shots: result.total_shots(),
        }
    }

    /// Earliest iteration at which any replica met the target.
    pub fn first_convergence(&self) -> Option<u64> {
        self.convergence_iterations.iter().flatten().min().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStats {
    pub runs: usize,
    pub converged_runs: usize,
    pub percent_converged: f64,
    /// Median over converged runs; `None` when no run converged.
    pub median_iterations: Option<f64>,
    /// Median shots spent by converged runs.
    pub median_shots: Option<f64>,
    /// Per replica slot: share of runs in which it converged, and its median.
    pub replica_percent: Vec<f64>,
    pub replica_median_iterations: Vec<Option<f64>>,
}

/// Median of the values; the mean of the middle pair for even counts.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    })
}

pub fn convergence_stats(runs: &[RunSummary]) -> Result<ConvergenceStats> {
    if runs.is_empty() {
        return Err(Error::param("runs", "need at least one run"));
    }
    let converged: Vec<&RunSummary> = runs.iter().filter(|r| r.converged).collect();
    let firsts: Vec<f64> = converged
        .iter()
        .filter_map(|r| r.first_convergence())
        .map(|i| i as f64)
        .collect();
    let shots: Vec<f64> = converged.iter().map(|r| r.total_shots as f64).collect();
    let slots = runs
        .iter()
        .map(|r| r.convergence_iterations.len())
        .max()
        .unwrap_or(0);
    let per_slot: Vec<Vec<f64>> = (0..slots)
        .map(|s| {
            runs.iter()
                .filter_map(|r| r.convergence_iterations.get(s).copied().flatten())
                .map(|i| i as f64)
                .collect()
        })
        .collect();
    let share = |count: usize| 100.0 * count as f64 / runs.len() as f64;
    Ok(ConvergenceStats {
        runs: runs.len(),
        converged_runs: converged.len(),
        percent_converged: share(converged.len()),
        median_iterations: median(&firsts),
        median_shots: median(&shots),
        replica_percent: per_slot.iter().map(|v| share(v.len())).collect(),
        replica_median_iterations: per_slot.iter().map(|v| median(v)).collect(),
    })
}

/// Least-squares line through `(size, ln cost)`; the slope is the
/// exponential growth rate of the cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    /// `ln cost - (intercept + slope * size)` per input point.
    pub residuals: Vec<f64>,
}

pub fn scaling_fit(points: &[(f64, f64)]) -> Result<ScalingFit> {
    if points.len() < 2 {
        return Err(Error::param("points", "need at least two points"));
    }
    if let Some(&(_, c)) = points.iter().find(|(_, c)| !(*c > 0.0 && c.is_finite())) {
        return Err(Error::param(
            "cost",
            format!("must be positive and finite, got {c}"),
        ));
    }
    let k = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::param("points", "sizes must not all be equal"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| y - (intercept + slope * x))
        .collect();
    Ok(ScalingFit {
        slope,
        intercept,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn summary(convergence: Vec<Option<u64>>) -> RunSummary {
        let first = convergence.iter().flatten().min().copied();
        RunSummary {
            run_id: 0,
            seed: 0,
            converged: first.is_some(),
            iterations: first.unwrap_or(100),
            convergence_iterations: convergence,
            best_energy: -1.0,
            total_shots: first.unwrap_or(100) * 10,
        }
    }

    #[test]
    fn all_converge_at_seven() {
        let runs: Vec<_> = (0..4).map(|_| summary(vec![Some(7), None])).collect();
        let s = convergence_stats(&runs).unwrap();
        assert_eq!(s.percent_converged, 100.0);
        assert_eq!(s.median_iterations, Some(7.0));
        assert_eq!(s.replica_median_iterations, vec![Some(7.0), None]);
        assert_eq!(s.replica_percent, vec![100.0, 0.0]);
    }

    #[test]
    fn none_converge() {
        let runs = vec![summary(vec![None, None]); 3];
        let s = convergence_stats(&runs).unwrap();
        assert_eq!(s.percent_converged, 0.0);
        assert_eq!(s.median_iterations, None);
        assert_eq!(s.median_shots, None);
        assert!(convergence_stats(&[]).is_err());
    }

    #[test]
    fn mixed_runs() {
        let runs = vec![
            summary(vec![Some(3)]),
            summary(vec![Some(5)]),
            summary(vec![None]),
        ];
        let s = convergence_stats(&runs).unwrap();
        assert!((s.percent_converged - 200.0 / 3.0).abs() < 1e-12);
        assert_eq!(s.median_iterations, Some(4.0));
        assert_eq!(s.median_shots, Some(40.0));
    }

    #[test]
    fn exact_fits() {
        let pts: Vec<(f64, f64)> = [10.0f64, 14.0, 18.0, 30.0]
            .iter()
            .map(|&x| (x, (0.1 * x).exp()))
            .collect();
        let f = scaling_fit(&pts).unwrap();
        assert!((f.slope - 0.1).abs() < 1e-9);
        assert!(f.intercept.abs() < 1e-9);
        assert!(f.residuals.iter().all(|r| r.abs() < 1e-9));

        let f = scaling_fit(&[(2.0, 3.0), (5.0, 7.0)]).unwrap();
        assert!((f.intercept + 2.0 * f.slope - 3f64.ln()).abs() < 1e-12);
        assert!((f.intercept + 5.0 * f.slope - 7f64.ln()).abs() < 1e-12);

        let series = |rate: f64| -> Vec<(f64, f64)> {
            (1..6)
                .map(|i| (i as f64 * 10.0, 3.0 * (rate * i as f64 * 10.0).exp()))
                .collect()
        };
        let ratio =
            scaling_fit(&series(0.086)).unwrap().slope / scaling_fit(&series(0.10)).unwrap().slope;
        assert!((ratio - 0.86).abs() < 1e-6);
    }

    #[test]
    fn fit_errors() {
        assert!(scaling_fit(&[(1.0, 1.0)]).is_err());
        assert!(scaling_fit(&[(1.0, 1.0), (2.0, 0.0)]).is_err());
        assert!(scaling_fit(&[(1.0, 1.0), (1.0, 2.0)]).is_err());
    }

    proptest! {
        #[test]
        fn slope_is_scale_invariant(
            pts in prop::collection::vec((0.0f64..100.0, 0.1f64..1e6), 2..12),
            scale in 1e-3f64..1e3,
        ) {
            prop_assume!(pts.iter().any(|p| (p.0 - pts[0].0).abs() > 1.0));
            let a = scaling_fit(&pts).unwrap();
            let scaled: Vec<_> = pts.iter().map(|&(x, c)| (x, c * scale)).collect();
            let b = scaling_fit(&scaled).unwrap();
            prop_assert!((a.slope - b.slope).abs() < 1e-12);
        }
    }
}
