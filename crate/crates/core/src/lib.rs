//! Maximum independent set by parallel-tempering Markov chain Monte Carlo.
//!
//! Chains propose moves either classically (k-flip, local search) or by
//! sampling an exactly simulated warm-start QAOA circuit built from the
//! chain's current configuration. The building blocks:
//!
//! - [`ising`]: graphs, penalized Ising models, Boltzmann weights, repair.
//! - [`statevector`]: dense simulation of the proposal circuits.
//! - [`proposals`]: the proposal distributions behind one trait.
//! - [`mcmc`]: Metropolis-Hastings replicas and the tempering loop.
//! - [`training`]: derivative-free angle training and penalty tuning.
//! - [`swap_network`]: couplings reachable by a SWAP network on a line.
//! - [`analysis`]: exact transition matrices and run statistics.

pub mod analysis;
mod error;
pub mod ising;
pub mod mcmc;
pub mod proposals;
pub mod rng;
pub mod statevector;
pub mod swap_network;
pub mod training;

pub use error::{Error, Result};
pub use ising::{BoltzmannDistribution, IsingModel, ProblemGraph, SpinConfig};
pub use mcmc::{RunConfig, RunResult, TemperatureLadder, TraceRecord};
pub use proposals::{ProposalOutcome, ProposalSpec, Proposer};
pub use statevector::{CircuitParams, MixerKind, QaoaCircuit, Statevector, WarmStart};
