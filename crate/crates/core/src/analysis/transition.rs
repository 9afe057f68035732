use ndarray::{Array1, Array2};

use crate::error::{check_temperature, Error, Result};
use crate::ising::IsingModel;

/// Largest `n` for which dense transition matrices are built.
pub const TRANSITION_CAP: usize = 12;

const Q_TOLERANCE: f64 = 1e-9;

/// Metropolis-Hastings kernel `P[[to, from]]` at one temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    pub n: usize,
    pub temperature: f64,
    pub p: Array2<f64>,
}

fn check_dims(n: usize, m: &Array2<f64>) -> Result<()> {
    if n > TRANSITION_CAP {
        return Err(Error::TooLarge {
            what: "transition matrix",
            n,
            cap: TRANSITION_CAP,
        });
    }
    let dim = 1usize << n;
    if m.dim() != (dim, dim) {
        return Err(Error::LengthMismatch {
            expected: dim,
            got: m.nrows(),
        });
    }
    Ok(())
}

/// `P(s'|s) = Q(s'|s) min(1, exp(-(E(s') - E(s))/T))` off the diagonal; the
/// diagonal keeps the rejected mass.
pub fn build_transition_matrix(
    q: &Array2<f64>,
    model: &IsingModel,
    temperature: f64,
) -> Result<TransitionMatrix> {
    check_temperature(temperature)?;
    let n = model.n();
    check_dims(n, q)?;
    for (column, col) in q.columns().into_iter().enumerate() {
        let sum = col.sum();
        if (sum - 1.0).abs() > Q_TOLERANCE || col.iter().any(|&x| x < 0.0) {
            return Err(Error::NotStochastic { column, sum });
        }
    }
    let energies = model.energy_table()?;
    let dim = energies.len();
    let mut p = Array2::zeros((dim, dim));
    for from in 0..dim {
        // summing the rejected mass keeps the diagonal non-negative
        let mut rejected = q[[from, from]];
        for to in (0..dim).filter(|&to| to != from) {
            let accept = (-(energies[to] - energies[from]) / temperature)
                .exp()
                .min(1.0);
            p[[to, from]] = q[[to, from]] * accept;
            rejected += q[[to, from]] * (1.0 - accept);
        }
        p[[from, from]] = rejected;
    }
    Ok(TransitionMatrix { n, temperature, p })
}

/// Exact kernel of the k-flip proposer: a flip count `j` uniform on `1..=k`,
/// then a uniform `j`-subset of bits.
pub fn kflip_proposal_matrix(n: usize, k: usize) -> Result<Array2<f64>> {
    if k == 0 || k > n {
        return Err(Error::param(
            "max_flips",
            format!("must lie in 1..={n}, got {k}"),
        ));
    }
    if n > TRANSITION_CAP {
        return Err(Error::TooLarge {
            what: "proposal matrix",
            n,
            cap: TRANSITION_CAP,
        });
    }
    let binomial =
        |n: usize, j: usize| (0..j).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64);
    let dim = 1usize << n;
    Ok(Array2::from_shape_fn((dim, dim), |(to, from)| {
        let d = (to ^ from).count_ones() as usize;
        if (1..=k).contains(&d) {
            1.0 / (k as f64 * binomial(n, d))
        } else {
            0.0
        }
    }))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationarityReport {
    /// `‖Pμ - μ‖₁`.
    pub residual: f64,
    /// `max |P(s'|s)μ(s) - P(s|s')μ(s')|` over pairs.
    pub detailed_balance: f64,
}

pub fn stationarity_check(p: &Array2<f64>, mu: &[f64]) -> Result<StationarityReport> {
    if p.nrows() != mu.len() || p.ncols() != mu.len() {
        return Err(Error::LengthMismatch {
            expected: p.nrows(),
            got: mu.len(),
        });
    }
    let mu_vec = Array1::from(mu.to_vec());
    let residual = (p.dot(&mu_vec) - &mu_vec).mapv(f64::abs).sum();
    let dim = mu.len();
    let mut detailed_balance: f64 = 0.0;
    for s in 0..dim {
        for t in s + 1..dim {
            detailed_balance = detailed_balance.max((p[[t, s]] * mu[s] - p[[s, t]] * mu[t]).abs());
        }
    }
    Ok(StationarityReport {
        residual,
        detailed_balance,
    })
}
