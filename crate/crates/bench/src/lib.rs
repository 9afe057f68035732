//! Shared fixtures for the benchmarks.

use qemis_core::ising::generators::random_graph;
use qemis_core::rng::stream;
use qemis_core::{IsingModel, SpinConfig};

/// Penalized MIS model on a seeded G(n, 0.3) graph.
pub fn model(n: usize, seed: u64) -> IsingModel {
    let graph = random_graph(n, 0.3, &mut stream(seed, 0));
    IsingModel::mis(&graph, 2.0).expect("lambda 2 is valid")
}

/// A fixed non-trivial configuration: every third vertex selected.
pub fn sparse_config(n: usize) -> SpinConfig {
    SpinConfig::from_bits((0..n).map(|i| i % 3 == 0).collect())
}
