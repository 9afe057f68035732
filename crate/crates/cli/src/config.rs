//! Experiment configuration: the TOML file format, CLI overrides and the
//! resolution of every referenced input into ready-to-run objects.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use qemis_core::analysis::TRANSITION_CAP;
use qemis_core::ising::brute_force::ground_states;
use qemis_core::ising::generators::random_graph;
use qemis_core::ising::{repair, BRUTE_FORCE_CAP};
use qemis_core::mcmc::{LadderSpec, DEFAULT_MAX_ITERATIONS};
use qemis_core::proposals::ShotPolicy;
use qemis_core::rng::stream;
use qemis_core::statevector::Initialization;
use qemis_core::swap_network::{coverage_report, simplify_model, CoverageReport, SwapPlan};
use qemis_core::training::TrainingOptions;
use qemis_core::{
    CircuitParams, IsingModel, MixerKind, ProblemGraph, ProposalSpec, Proposer, QaoaCircuit,
    SpinConfig, TemperatureLadder,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::params::ParamsFile;

/// A configuration problem, attributed to the offending field.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl fmt::Display) -> Self {
        Self {
            field: field.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config field `{}`: {}", self.field, self.message)
    }
}

impl std::error::Error for ConfigError {}

type CResult<T> = std::result::Result<T, ConfigError>;

fn field<T, E: fmt::Display>(name: &str, r: std::result::Result<T, E>) -> CResult<T> {
    r.map_err(|e| ConfigError::new(name, e))
}

fn one() -> usize {
    1
}

fn default_eps() -> f64 {
    0.25
}

fn default_depth() -> usize {
    2
}

fn default_swap_interval() -> u64 {
    1
}

fn default_max_iterations() -> u64 {
    DEFAULT_MAX_ITERATIONS
}

fn default_params_out() -> String {
    "params.toml".into()
}

fn default_temperatures() -> Vec<f64> {
    vec![0.1, 10.0]
}

fn default_oracle_steps() -> u64 {
    1_000_000
}

fn default_checkpoints() -> usize {
    20
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "one")]
    pub repeats: usize,
    /// Where results go; not part of the hashed experiment.
    #[serde(default, skip_serializing)]
    pub out: Option<PathBuf>,
    /// Worker threads for repeat runs; 0 uses every available core.
    /// Execution settings like this one stay out of the hash.
    #[serde(default, skip_serializing)]
    pub workers: usize,
    #[serde(default)]
    pub target: TargetSpec,
    pub instance: InstanceSpec,
    #[serde(default)]
    pub model: ModelSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proposal: Option<ProposalConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit: Option<CircuitConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<ShotPolicy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ladder: Option<LadderSpec>,
    #[serde(default)]
    pub run: RunSpec,
    #[serde(default)]
    pub training: TrainingSpec,
    #[serde(default)]
    pub oracle: OracleSpec,
}

/// An explicit objective, or `"brute-force"` to enumerate the ground energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetSpec {
    Energy(f64),
    Directive(String),
}

impl Default for TargetSpec {
    fn default() -> Self {
        TargetSpec::Directive(BRUTE_FORCE.into())
    }
}

const BRUTE_FORCE: &str = "brute-force";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    #[default]
    EdgeList,
    Dimacs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub paths: Vec<PathBuf>,
    #[serde(default)]
    pub format: GraphFormat,
    /// Erdős–Rényi instances generated from their own seeds.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub random: Vec<RandomInstance>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomInstance {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    /// Penalty weight; falls back to the params file, then to 2.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
}

pub const DEFAULT_LAMBDA: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProposalConfig {
    KFlip {
        #[serde(default = "one")]
        max_flips: usize,
        #[serde(default = "one")]
        shots: usize,
        #[serde(default = "one")]
        keep_best: usize,
    },
    LocalSearch {
        #[serde(default = "one")]
        distance: usize,
    },
    /// Samples the `[circuit]` with the `[shots]` policy.
    Quantum {
        #[serde(default = "one")]
        keep_best: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitKind {
    #[default]
    WarmStart,
    Basis,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitConfig {
    #[serde(default)]
    pub init: InitKind,
    #[serde(default = "default_mixer")]
    pub mixer: MixerKind,
    /// Warm-start regularization of the input state.
    #[serde(default = "default_eps")]
    pub eps: f64,
    /// Mixer regularization; defaults to `eps`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_mix: Option<f64>,
    #[serde(default = "default_depth")]
    pub depth: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<ScheduleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params_file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub swap: Option<SwapSpec>,
}

fn default_mixer() -> MixerKind {
    MixerKind::WarmStart
}

impl Default for CircuitConfig {
    fn default() -> Self {
        Self {
            init: InitKind::default(),
            mixer: default_mixer(),
            eps: default_eps(),
            eps_mix: None,
            depth: default_depth(),
            gamma: None,
            beta: None,
            schedule: None,
            params_file: None,
            swap: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSpec {
    pub kappa: f64,
    pub time: f64,
    /// Cost normalization; defaults to `n / Σ(|h| + |J|)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwapSpec {
    pub layers: usize,
    /// Vertex placed at each line position; identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line_order: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    #[serde(default = "default_swap_interval")]
    pub swap_interval: u64,
    #[serde(default = "default_max_iterations")]
    pub max_iterations: u64,
    /// Step replicas concurrently inside each run; not hashed.
    #[serde(default, skip_serializing)]
    pub parallel_replicas: bool,
    /// Shared starting bitstring; uniform random per replica when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<String>,
    /// Skip per-run trace files.
    #[serde(default)]
    pub no_traces: bool,
}

impl Default for RunSpec {
    fn default() -> Self {
        Self {
            swap_interval: default_swap_interval(),
            max_iterations: default_max_iterations(),
            parallel_replicas: false,
            start: None,
            no_traces: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainingSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambda_grid: Vec<f64>,
    /// Warm-start base bitstring; the greedy repair of all-zeros when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    #[serde(default)]
    pub options: TrainingOptions,
    /// Train on the full model even when a SWAP plan simplifies the circuit.
    #[serde(default)]
    pub train_on_full_model: bool,
    #[serde(default = "default_params_out")]
    pub params_out: String,
}

impl Default for TrainingSpec {
    fn default() -> Self {
        Self {
            lambda_grid: Vec::new(),
            base: None,
            options: TrainingOptions::default(),
            train_on_full_model: false,
            params_out: default_params_out(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSpec {
    #[serde(default = "default_temperatures")]
    pub temperatures: Vec<f64>,
    #[serde(default = "default_oracle_steps")]
    pub steps: u64,
    /// Evenly spaced TV readings along the chain.
    #[serde(default = "default_checkpoints")]
    pub checkpoints: usize,
    /// Replace the configured proposal with the identity kernel.
    #[serde(default)]
    pub identity_proposal: bool,
}

impl Default for OracleSpec {
    fn default() -> Self {
        Self {
            temperatures: default_temperatures(),
            steps: default_oracle_steps(),
            checkpoints: default_checkpoints(),
            identity_proposal: false,
        }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub repeats: Option<usize>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> CResult<Self> {
        toml::from_str(text).map_err(|e| {
            let name = e
                .message()
                .split('`')
                .nth(1)
                .filter(|_| e.message().contains("field"))
                .unwrap_or("config")
                .to_string();
            ConfigError::new(name, e.message().trim())
        })
    }

    /// Reads the file and makes every relative input path absolute against
    /// the file's directory.
    pub fn load(path: &Path) -> CResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| ConfigError::new("--config", format!("{}: {e}", path.display())))?;
        let mut config = Self::parse(&text)?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let dir = if dir.as_os_str().is_empty() {
            PathBuf::from(".")
        } else {
            dir
        };
        let dir = field("--config", fs::canonicalize(&dir))?;
        for p in &mut config.instance.paths {
            *p = absolute(&dir, p);
        }
        if let Some(file) = config.circuit.as_mut().and_then(|c| c.params_file.as_mut()) {
            *file = absolute(&dir, file);
        }
        if let Some(out) = config.out.as_mut() {
            *out = absolute(&dir, out);
        }
        Ok(config)
    }

    pub fn apply(&mut self, overrides: &Overrides) {
        if let Some(seed) = overrides.seed {
            self.seed = seed;
        }
        if let Some(out) = &overrides.out {
            self.out = Some(out.clone());
        }
        if let Some(repeats) = overrides.repeats {
            self.repeats = repeats;
        }
    }

    /// Canonical text of the resolved config; the hash covers exactly these bytes.
    pub fn canonical_text(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn out_dir(&self) -> CResult<&Path> {
        self.out
            .as_deref()
            .ok_or_else(|| ConfigError::new("out", "no output directory; set `out` or pass --out"))
    }

    pub fn circuit(&self) -> CircuitConfig {
        self.circuit.clone().unwrap_or_default()
    }

    pub fn load_instances(&self) -> CResult<Vec<Instance>> {
        let spec = &self.instance;
        if spec.paths.is_empty() && spec.random.is_empty() {
            return Err(ConfigError::new(
                "instance",
                "give `paths` or `random` instances",
            ));
        }
        let mut out = Vec::new();
        for path in &spec.paths {
            let text = fs::read_to_string(path).map_err(|e| {
                ConfigError::new("instance.paths", format!("{}: {e}", path.display()))
            })?;
            let parsed = match spec.format {
                GraphFormat::EdgeList => ProblemGraph::parse_edge_list(&text),
                GraphFormat::Dimacs => ProblemGraph::parse_dimacs(&text),
            };
            let graph = parsed.map_err(|e| {
                ConfigError::new("instance.paths", format!("{}: {e}", path.display()))
            })?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            out.push(Instance { name, graph });
        }
        for r in &spec.random {
            if r.n == 0 || !(0.0..=1.0).contains(&r.p) {
                return Err(ConfigError::new(
                    "instance.random",
                    "needs n >= 1 and p in [0, 1]",
                ));
            }
            let graph = random_graph(r.n, r.p, &mut stream(r.seed, 0));
            out.push(Instance {
                name: format!("random-n{}-p{}-s{}", r.n, r.p, r.seed),
                graph,
            });
        }
        Ok(out)
    }

    pub fn params_file(&self) -> CResult<Option<ParamsFile>> {
        match self.circuit.as_ref().and_then(|c| c.params_file.as_ref()) {
            None => Ok(None),
            Some(path) => ParamsFile::read(path).map(Some).map_err(|e| {
                ConfigError::new("circuit.params_file", format!("{}: {e:#}", path.display()))
            }),
        }
    }

    /// λ from the config, else from the params file, else the default.
    pub fn lambda(&self, params: Option<&ParamsFile>) -> CResult<f64> {
        let lambda = self
            .model
            .lambda
            .or(params.map(|p| p.lambda))
            .unwrap_or(DEFAULT_LAMBDA);
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(ConfigError::new(
                "model.lambda",
                format!("must be positive, got {lambda}"),
            ));
        }
        Ok(lambda)
    }

    /// Circuit with placeholder angles, used as the training template.
    pub fn circuit_template(&self) -> CResult<QaoaCircuit> {
        let c = self.circuit();
        let params = CircuitParams::new(0.0, 0.0);
        let circuit = QaoaCircuit {
            params,
            depth: c.depth,
            mixer: c.mixer,
            init: match c.init {
                InitKind::WarmStart => Initialization::WarmStart { eps: c.eps },
                InitKind::Basis => Initialization::Basis,
            },
            eps_mix: c.eps_mix.unwrap_or(c.eps),
        };
        field("circuit", circuit.validate())?;
        Ok(circuit)
    }

    /// The configured circuit with its angles resolved for `model`.
    pub fn resolved_circuit(
        &self,
        model: &IsingModel,
        params: Option<&ParamsFile>,
    ) -> CResult<QaoaCircuit> {
        let c = self.circuit();
        let sources = [
            c.gamma.is_some() || c.beta.is_some(),
            c.schedule.is_some(),
            c.params_file.is_some(),
        ];
        if sources.iter().filter(|&&s| s).count() != 1 {
            return Err(ConfigError::new(
                "circuit",
                "give exactly one of `gamma`+`beta`, `schedule` or `params_file`",
            ));
        }
        let angles = if let Some(s) = c.schedule {
            let alpha = match s.alpha {
                Some(a) => a,
                None => {
                    let scale = model.coefficient_scale();
                    if scale > 0.0 {
                        model.n() as f64 / scale
                    } else {
                        1.0
                    }
                }
            };
            field(
                "circuit.schedule",
                CircuitParams::from_schedule(s.kappa, s.time, alpha),
            )?
        } else if let Some(p) = params {
            CircuitParams::new(p.gamma, p.beta)
        } else {
            match (c.gamma, c.beta) {
                (Some(g), Some(b)) if g.is_finite() && b.is_finite() => CircuitParams::new(g, b),
                _ => {
                    return Err(ConfigError::new(
                        "circuit.gamma",
                        "`gamma` and `beta` must both be finite",
                    ))
                }
            }
        };
        let mut circuit = self.circuit_template()?;
        circuit.params = angles;
        Ok(circuit)
    }

    pub fn swap_plan(&self, n: usize) -> CResult<Option<SwapPlan>> {
        let Some(swap) = self.circuit.as_ref().and_then(|c| c.swap.as_ref()) else {
            return Ok(None);
        };
        let order = swap.line_order.clone().unwrap_or_else(|| (0..n).collect());
        if order.len() != n {
            return Err(ConfigError::new(
                "circuit.swap.line_order",
                format!("has {} entries, instance has {n} vertices", order.len()),
            ));
        }
        field("circuit.swap", SwapPlan::new(order, swap.layers)).map(Some)
    }

    pub fn training_base(&self, graph: &ProblemGraph) -> CResult<SpinConfig> {
        match &self.training.base {
            Some(bits) => {
                let s: SpinConfig = field("training.base", bits.parse())?;
                if s.len() != graph.n() {
                    return Err(ConfigError::new(
                        "training.base",
                        format!("has {} bits, instance has {} vertices", s.len(), graph.n()),
                    ));
                }
                Ok(s)
            }
            None => field(
                "training.base",
                repair(graph, &SpinConfig::zeros(graph.n())),
            ),
        }
    }

    fn target_energy(&self, model: &IsingModel) -> CResult<f64> {
        match &self.target {
            TargetSpec::Energy(e) if e.is_finite() => Ok(*e),
            TargetSpec::Energy(e) => Err(ConfigError::new(
                "target",
                format!("must be finite, got {e}"),
            )),
            TargetSpec::Directive(d) if d == BRUTE_FORCE => {
                if model.n() > BRUTE_FORCE_CAP {
                    return Err(ConfigError::new(
                        "target",
                        format!(
                            "\"{BRUTE_FORCE}\" needs n <= {BRUTE_FORCE_CAP}, got n = {}",
                            model.n()
                        ),
                    ));
                }
                field("target", ground_states(model, 1e-9)).map(|(e, _)| e)
            }
            TargetSpec::Directive(d) => Err(ConfigError::new(
                "target",
                format!("expected a number or \"{BRUTE_FORCE}\", got \"{d}\""),
            )),
        }
    }

    fn proposal_spec(
        &self,
        model: &IsingModel,
        params: Option<&ParamsFile>,
    ) -> CResult<ProposalSpec> {
        let proposal = self
            .proposal
            .as_ref()
            .ok_or_else(|| ConfigError::new("proposal", "missing [proposal] section"))?;
        Ok(match *proposal {
            ProposalConfig::KFlip {
                max_flips,
                shots,
                keep_best,
            } => ProposalSpec::KFlip {
                max_flips,
                shots,
                keep_best,
            },
            ProposalConfig::LocalSearch { distance } => ProposalSpec::LocalSearch { distance },
            ProposalConfig::Quantum { keep_best } => {
                let shots = self.shots.ok_or_else(|| {
                    ConfigError::new("shots", "a quantum proposal needs a [shots] policy")
                })?;
                field("shots", shots.required_shots())?;
                ProposalSpec::Quantum {
                    circuit: self.resolved_circuit(model, params)?,
                    shots,
                    keep_best,
                }
            }
        })
    }

    /// Everything `solve` needs, built before any output is written.
    pub fn prepare_solve(&self) -> CResult<Vec<SolveInstance>> {
        if self.repeats == 0 {
            return Err(ConfigError::new("repeats", "must be at least 1"));
        }
        let ladder_spec = self
            .ladder
            .as_ref()
            .ok_or_else(|| ConfigError::new("ladder", "missing [ladder] section"))?;
        let params = self.params_file()?;
        let lambda = self.lambda(params.as_ref())?;
        let start = match &self.run.start {
            Some(bits) => Some(field::<SpinConfig, _>("run.start", bits.parse())?),
            None => None,
        };
        let mut prepared = Vec::new();
        for instance in self.load_instances()? {
            let n = instance.graph.n();
            let model = Arc::new(field("model", IsingModel::mis(&instance.graph, lambda))?);
            let target = self.target_energy(&model)?;
            let ladder = field("ladder", ladder_spec.build(&model))?;
            let plan = self.swap_plan(n)?;
            let (circuit_model, coverage) = match &plan {
                Some(plan) => (
                    Some(field("circuit.swap", simplify_model(&model, plan))?),
                    Some(field(
                        "circuit.swap",
                        coverage_report(&instance.graph, plan),
                    )?),
                ),
                None => (None, None),
            };
            let spec = self.proposal_spec(&model, params.as_ref())?;
            let proposer = field(
                "proposal",
                spec.build(model.clone(), circuit_model.as_ref()),
            )?;
            if let Some(s) = &start {
                if s.len() != n {
                    return Err(ConfigError::new(
                        "run.start",
                        format!(
                            "has {} bits, instance {} has {n} vertices",
                            s.len(),
                            instance.name
                        ),
                    ));
                }
            }
            let run = self.run_config(ladder.clone(), target, start.clone());
            field("run", run.validate(n))?;
            prepared.push(SolveInstance {
                start: start.clone(),
                instance,
                model,
                target,
                ladder,
                proposer,
                coverage,
                circuit: match spec {
                    ProposalSpec::Quantum { circuit, .. } => Some(circuit),
                    _ => None,
                },
            });
        }
        Ok(prepared)
    }

    pub fn run_config(
        &self,
        ladder: TemperatureLadder,
        target: f64,
        start: Option<SpinConfig>,
    ) -> qemis_core::RunConfig {
        let mut run = qemis_core::RunConfig::new(ladder, target, self.seed);
        run.swap_interval = self.run.swap_interval;
        run.max_iterations = self.run.max_iterations;
        run.parallel = self.run.parallel_replicas;
        run.initial = start;
        run
    }

    pub fn validate_oracle(&self, n: usize) -> CResult<()> {
        if n > TRANSITION_CAP {
            return Err(ConfigError::new(
                "instance",
                format!("the oracle needs n <= {TRANSITION_CAP}, got n = {n}"),
            ));
        }
        let o = &self.oracle;
        if o.temperatures.is_empty() || o.temperatures.iter().any(|t| !(t.is_finite() && *t > 0.0))
        {
            return Err(ConfigError::new(
                "oracle.temperatures",
                "need positive finite temperatures",
            ));
        }
        if o.steps == 0 || o.checkpoints == 0 || o.checkpoints as u64 > o.steps {
            return Err(ConfigError::new(
                "oracle.checkpoints",
                "need 1 <= checkpoints <= steps",
            ));
        }
        Ok(())
    }
}

fn absolute(dir: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        dir.join(p)
    }
}

pub fn config_hash(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub graph: ProblemGraph,
}

pub struct SolveInstance {
    pub instance: Instance,
    pub model: Arc<IsingModel>,
    pub target: f64,
    pub ladder: TemperatureLadder,
    pub proposer: Arc<dyn Proposer>,
    pub coverage: Option<CoverageReport>,
    pub circuit: Option<QaoaCircuit>,
    pub start: Option<SpinConfig>,
}
