use std::sync::Arc;

use anyhow::Result;
use ndarray::Array2;
use qemis_core::analysis::{
    build_transition_matrix, empirical_chain_distribution, kflip_proposal_matrix,
    stationarity_check, tv_curve,
};
use qemis_core::proposals::{LocalSearchProposer, MatrixProposer};
use qemis_core::rng::{derive_seed, stream};
use qemis_core::swap_network::simplify_model;
use qemis_core::{BoltzmannDistribution, IsingModel, Proposer, SpinConfig};
use serde::Serialize;

use super::stamp;
use crate::config::{ConfigError, ExperimentConfig, ProposalConfig};
use crate::output::{sanitize, OutputDir};

#[derive(Debug, Clone, Serialize)]
pub struct OracleRow {
    pub instance: String,
    pub n: usize,
    pub temperature: f64,
    pub proposal: String,
    pub proposal_symmetric: bool,
    /// `max |Σ_to P(to|from) - 1|` over columns.
    pub column_sum_error: f64,
    pub stationarity_residual: f64,
    pub detailed_balance_residual: f64,
    pub steps: u64,
    pub final_tv: f64,
}

#[derive(Debug, Serialize)]
struct TvRow {
    steps: u64,
    tv: f64,
}

#[derive(Debug, Serialize)]
struct BoltzmannRow {
    index: usize,
    bitstring: String,
    energy: f64,
    exact: f64,
    empirical: f64,
}

fn is_symmetric(q: &Array2<f64>) -> bool {
    q.indexed_iter().all(|((i, j), &v)| v == q[[j, i]])
}

/// The exact one-step proposal kernel `Q[[to, from]]` for the config.
fn proposal_matrix(
    config: &ExperimentConfig,
    model: &Arc<IsingModel>,
) -> Result<(String, Array2<f64>)> {
    let n = model.n();
    let dim = 1usize << n;
    if config.oracle.identity_proposal {
        return Ok(("identity".into(), Array2::eye(dim)));
    }
    let proposal = config
        .proposal
        .as_ref()
        .ok_or_else(|| ConfigError::new("proposal", "missing [proposal] section"))?;
    // the kept sample is a plain draw from Q only when the pool keeps every shot
    let exact_pool = |shots: usize, keep: usize, name: &str| {
        if keep >= shots {
            Ok(())
        } else {
            Err(ConfigError::new(
                name.to_string(),
                format!("the exact kernel needs keep_best >= shots ({keep} < {shots})"),
            ))
        }
    };
    Ok(match *proposal {
        ProposalConfig::KFlip {
            max_flips,
            shots,
            keep_best,
        } => {
            exact_pool(shots, keep_best, "proposal.keep_best")?;
            (
                format!("k-flip(k={max_flips})"),
                kflip_proposal_matrix(n, max_flips)?,
            )
        }
        ProposalConfig::LocalSearch { distance } => {
            let proposer = LocalSearchProposer::new(model.clone(), distance)?;
            let mut rng = stream(0, 0);
            let mut q = Array2::zeros((dim, dim));
            for from in 0..dim {
                let to = proposer
                    .propose(&SpinConfig::from_index(from, n), &mut rng)?
                    .candidate
                    .index();
                q[[to, from]] = 1.0;
            }
            (format!("local-search(d={distance})"), q)
        }
        ProposalConfig::Quantum { keep_best } => {
            let shots = config
                .shots
                .map(|s| s.required_shots())
                .transpose()?
                .unwrap_or(1);
            exact_pool(shots, keep_best, "proposal.keep_best")?;
            let params = config.params_file()?;
            let circuit = config.resolved_circuit(model, params.as_ref())?;
            let circuit_model = match config.swap_plan(n)? {
                Some(plan) => simplify_model(model, &plan)?,
                None => (**model).clone(),
            };
            ("quantum".into(), circuit.proposal_matrix(&circuit_model)?)
        }
    })
}

fn checkpoints(steps: u64, count: usize) -> Vec<u64> {
    let mut c: Vec<u64> = (1..=count as u64)
        .map(|i| steps * i / count as u64)
        .collect();
    c.dedup();
    c
}

pub fn run(config: &ExperimentConfig) -> Result<Vec<OracleRow>> {
    let instances = config.load_instances()?;
    let params = config.params_file()?;
    let lambda = config.lambda(params.as_ref())?;
    let mut kernels = Vec::new();
    for inst in &instances {
        config.validate_oracle(inst.graph.n())?;
        let model = Arc::new(IsingModel::mis(&inst.graph, lambda)?);
        let (name, q) = proposal_matrix(config, &model)?;
        kernels.push((model, name, q));
    }
    let out_path = config.out_dir()?.to_path_buf();
    let (canonical, hash) = stamp(config);
    let mut out = OutputDir::create(&out_path, &hash)?;

    let oracle = &config.oracle;
    let marks = checkpoints(oracle.steps, oracle.checkpoints);
    let mut rows = Vec::new();
    for (i, (inst, (model, name, q))) in instances.iter().zip(&kernels).enumerate() {
        let sampler = MatrixProposer::new(model.n(), q)?;
        let energies = model.energy_table()?;
        for (t_idx, &t) in oracle.temperatures.iter().enumerate() {
            let mu = BoltzmannDistribution::new(model, t)?.probabilities;
            let p = build_transition_matrix(q, model, t)?;
            let column_sum_error =
                p.p.columns()
                    .into_iter()
                    .map(|c| (c.sum() - 1.0).abs())
                    .fold(0.0, f64::max);
            let report = stationarity_check(&p.p, &mu)?;
            let seed = derive_seed(config.seed, t_idx as u64);
            let curve = tv_curve(model, t, &sampler, &mu, &marks, seed)?;
            let empirical =
                empirical_chain_distribution(model, t, &sampler, oracle.steps, 0, seed)?;
            let stem = format!("{}_i{i}_t{t_idx}", sanitize(&inst.name));
            out.write_csv(
                &format!("tv_{stem}.csv"),
                &curve
                    .iter()
                    .map(|&(steps, tv)| TvRow { steps, tv })
                    .collect::<Vec<_>>(),
            )?;
            let dist: Vec<BoltzmannRow> = (0..mu.len())
                .map(|s| BoltzmannRow {
                    index: s,
                    bitstring: SpinConfig::from_index(s, model.n()).to_string(),
                    energy: energies[s],
                    exact: mu[s],
                    empirical: empirical[s],
                })
                .collect();
            out.write_csv(&format!("boltzmann_{stem}.csv"), &dist)?;
            rows.push(OracleRow {
                instance: inst.name.clone(),
                n: model.n(),
                temperature: t,
                proposal: name.clone(),
                proposal_symmetric: is_symmetric(q),
                column_sum_error,
                stationarity_residual: report.residual,
                detailed_balance_residual: report.detailed_balance,
                steps: oracle.steps,
                final_tv: curve.last().map(|c| c.1).unwrap_or(f64::NAN),
            });
        }
    }
    out.write_csv("oracle_summary.csv", &rows)?;
    out.write_manifest("oracle", &[], &canonical)?;
    for r in &rows {
        println!(
            "{} T={}: stationarity {:.3e}, detailed balance {:.3e}, TV {:.4}",
            r.instance,
            r.temperature,
            r.stationarity_residual,
            r.detailed_balance_residual,
            r.final_tv
        );
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checkpoints_are_even_and_end_at_steps() {
        assert_eq!(checkpoints(100, 4), vec![25, 50, 75, 100]);
        assert_eq!(checkpoints(3, 3), vec![1, 2, 3]);
    }
}
