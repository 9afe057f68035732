//! Command-line front end: experiment configs, seeded run batches, JSON-lines
//! traces, CSV summaries and hash-stamped manifests.

pub mod cli;
pub mod commands;
pub mod config;
pub mod output;
pub mod params;

pub use config::{ConfigError, ExperimentConfig, Overrides};
