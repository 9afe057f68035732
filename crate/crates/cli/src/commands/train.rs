use anyhow::Result;
use qemis_core::statevector::SIM_CAP;
use qemis_core::swap_network::simplify_model;
use qemis_core::training::{train, tune_lambda};
use qemis_core::IsingModel;

use super::stamp;
use crate::config::{ConfigError, ExperimentConfig};
use crate::output::OutputDir;
use crate::params::{LambdaRow, ParamsFile};

/// Trains one instance and writes the parameter file into the output directory.
pub fn run(config: &ExperimentConfig) -> Result<ParamsFile> {
    let mut instances = config.load_instances()?;
    if instances.len() != 1 {
        return Err(ConfigError::new("instance", "train takes exactly one instance").into());
    }
    let instance = instances.remove(0);
    let graph = &instance.graph;
    if graph.n() > SIM_CAP {
        return Err(ConfigError::new(
            "instance",
            format!("training needs n <= {SIM_CAP}, got n = {}", graph.n()),
        )
        .into());
    }
    let template = config.circuit_template()?;
    let base = config.training_base(graph)?;
    let plan = config.swap_plan(graph.n())?;
    let spec = &config.training;
    let simplified = plan.is_some() && !spec.train_on_full_model;
    if simplified && !spec.lambda_grid.is_empty() {
        return Err(ConfigError::new(
            "training.lambda_grid",
            "λ tuning runs on the full model; set train_on_full_model = true with a SWAP plan",
        )
        .into());
    }
    if spec
        .lambda_grid
        .iter()
        .any(|l| !(l.is_finite() && *l > 0.0))
    {
        return Err(ConfigError::new("training.lambda_grid", "values must be positive").into());
    }
    let out_path = config.out_dir()?.to_path_buf();
    crate::output::check_name(&spec.params_out)
        .map_err(|e| ConfigError::new("training.params_out", e))?;
    let (canonical, hash) = stamp(config);

    let (lambda, trained, lambda_scan) = if spec.lambda_grid.is_empty() {
        let lambda = config.lambda(None)?;
        let full = IsingModel::mis(graph, lambda)?;
        let model = match &plan {
            Some(plan) if simplified => simplify_model(&full, plan)?,
            _ => full,
        };
        (
            lambda,
            train(&model, &template, &base, &spec.options)?,
            Vec::new(),
        )
    } else {
        let tuning = tune_lambda(graph, &spec.lambda_grid, &template, &base, &spec.options)?;
        let rows = tuning.diagnostics.iter().map(LambdaRow::from).collect();
        (tuning.lambda, tuning.trained, rows)
    };

    let params = ParamsFile {
        config_hash: hash.clone(),
        instance: instance.name.clone(),
        n: graph.n(),
        lambda,
        gamma: trained.gamma,
        beta: trained.beta,
        energy: trained.energy,
        base,
        circuit: template,
        trained_on_full_model: !simplified,
        lambda_scan,
    };
    let mut out = OutputDir::create(&out_path, &hash)?;
    out.write_atomic(&spec.params_out, params.to_text()?.as_bytes())?;
    let notes = vec![format!(
        "instance {}: lambda={} gamma={} beta={} energy={} p1=({}, {}, {})",
        instance.name,
        lambda,
        trained.gamma,
        trained.beta,
        trained.energy,
        trained.p1.gamma,
        trained.p1.beta,
        trained.p1.energy
    )];
    out.write_manifest("train", &notes, &canonical)?;
    println!(
        "{}: lambda {} gamma {} beta {} energy {}",
        instance.name, lambda, trained.gamma, trained.beta, trained.energy
    );
    Ok(params)
}
