//! MIS instances, their penalized Ising energies, and exact small-instance oracles.

mod boltzmann;
pub mod brute_force;
pub mod generators;
mod graph;
mod model;
mod repair;
mod spin;

pub use boltzmann::{BoltzmannDistribution, BRUTE_FORCE_CAP};
pub use graph::ProblemGraph;
pub use model::{is_independent, mis_qubo_energy, violations, Coupling, IsingModel, TABLE_CAP};
pub use repair::{approximation_ratio, repair};
pub use spin::SpinConfig;
