//! Ising energy functions for penalized MIS.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ProblemGraph, SpinConfig};
use crate::error::{Error, Result};

/// Largest `n` for which full `2^n` energy tables are built.
pub const TABLE_CAP: usize = 22;

/// A pairwise coupling `J_ij` between qubits `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coupling {
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

/// Diagonal Ising Hamiltonian
///
/// `E(z) = offset - Σ_i h_i z_i - Σ_(i<j) J_ij z_i z_j`, with `z_i = 1 - 2 x_i`.
///
/// Energies are always minimized. `lambda` records the penalty factor the model
/// was built with and does not enter [`IsingModel::energy`] directly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingModel {
    n: usize,
    linear: Vec<f64>,
    quadratic: Vec<Coupling>,
    offset: f64,
    lambda: f64,
}

impl IsingModel {
    pub fn new(
        n: usize,
        linear: Vec<f64>,
        quadratic: Vec<Coupling>,
        offset: f64,
        lambda: f64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if linear.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: linear.len(),
            });
        }
        for c in &quadratic {
            if c.i >= c.j || c.j >= n {
                return Err(Error::param(
                    "coupling",
                    format!("({}, {}) is not a pair i < j < {n}", c.i, c.j),
                ));
            }
        }
        let finite = linear
            .iter()
            .chain(quadratic.iter().map(|c| &c.value))
            .all(|v| v.is_finite());
        if !finite || !offset.is_finite() {
            return Err(Error::param("coefficients", "must be finite"));
        }
        Ok(Self {
            n,
            linear,
            quadratic,
            offset,
            lambda,
        })
    }

    /// Penalized MIS model with minimized energy
    /// `E(x) = -Σ x_i + λ Σ_(i,j)∈E x_i x_j`, written in spin form:
    /// `h_i = λ deg(i)/4 - 1/2`, `J_ij = -λ/4`, `offset = -n/2 + λ|E|/4`.
    pub fn mis(graph: &ProblemGraph, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::param(
                "lambda",
                format!("must be positive, got {lambda}"),
            ));
        }
        let n = graph.n();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let linear = (0..n)
            .map(|v| lambda * graph.degree(v) as f64 / 4.0 - 0.5)
            .collect();
        let quadratic = graph
            .edges()
            .iter()
            .map(|&(i, j)| Coupling {
                i,
                j,
                value: -lambda / 4.0,
            })
            .collect();
        let offset = -(n as f64) / 2.0 + lambda * graph.num_edges() as f64 / 4.0;
        Self::new(n, linear, quadratic, offset, lambda)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    pub fn quadratic(&self) -> &[Coupling] {
        &self.quadratic
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `Σ|h_i| + Σ|J_ij|`.
    pub fn coefficient_scale(&self) -> f64 {
        self.linear.iter().map(|h| h.abs()).sum::<f64>()
            + self.quadratic.iter().map(|c| c.value.abs()).sum::<f64>()
    }

    /// Same model keeping only the couplings for which `keep(i, j)` holds.
    pub fn retain_couplings(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Self {
        Self {
            quadratic: self
                .quadratic
                .iter()
                .copied()
                .filter(|c| keep(c.i, c.j))
                .collect(),
            ..self.clone()
        }
    }

    pub fn energy(&self, config: &SpinConfig) -> Result<f64> {
        config.check_len(self.n)?;
        Ok(self.energy_of(|i| config.get(i)))
    }

    /// Energy of the basis state `index` (bit `j` = `x_j`).
    pub fn energy_of_index(&self, index: usize) -> f64 {
        self.energy_of(|i| (index >> i) & 1 == 1)
    }

    fn energy_of(&self, bit: impl Fn(usize) -> bool) -> f64 {
        let z = |i: usize| if bit(i) { -1.0 } else { 1.0 };
        let mut e = self.offset;
        for (i, h) in self.linear.iter().enumerate() {
            e -= h * z(i);
        }
        for c in &self.quadratic {
            e -= c.value * z(c.i) * z(c.j);
        }
        e
    }

    /// Energies of all `2^n` basis states, indexed as statevector amplitudes.
    pub fn energy_table(&self) -> Result<Vec<f64>> {
        if self.n > TABLE_CAP {
            return Err(Error::TooLarge {
                what: "energy table",
                n: self.n,
                cap: TABLE_CAP,
            });
        }
        Ok((0..1usize << self.n)
            .into_par_iter()
            .map(|idx| self.energy_of_index(idx))
            .collect())
    }
}

/// The QUBO form `-Σ x_i + λ Σ_(i,j)∈E x_i x_j`, evaluated directly on bits.
pub fn mis_qubo_energy(graph: &ProblemGraph, lambda: f64, config: &SpinConfig) -> Result<f64> {
    config.check_len(graph.n())?;
    let selected = config.count_ones() as f64;
    Ok(-selected + lambda * violations(graph, config)? as f64)
}

/// Number of edges with both endpoints selected.
pub fn violations(graph: &ProblemGraph, config: &SpinConfig) -> Result<usize> {
    config.check_len(graph.n())?;
    Ok(graph
        .edges()
        .iter()
        .filter(|&&(u, v)| config.get(u) && config.get(v))
        .count())
}

pub fn is_independent(graph: &ProblemGraph, config: &SpinConfig) -> Result<bool> {
    Ok(violations(graph, config)? == 0)
}
