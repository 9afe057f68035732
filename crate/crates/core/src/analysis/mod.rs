//! Exact small-instance oracles and statistics over repeated runs.
//!
//! Matrices are column-stochastic with column = source state, matching
//! [`QaoaCircuit::proposal_matrix`](crate::statevector::QaoaCircuit::proposal_matrix).

mod distribution;
mod stats;
mod transition;

pub use distribution::{empirical_chain_distribution, total_variation, tv_curve};
pub use stats::{convergence_stats, median, scaling_fit, ConvergenceStats, RunSummary, ScalingFit};
pub use transition::{
    build_transition_matrix, kflip_proposal_matrix, stationarity_check, StationarityReport,
    TransitionMatrix, TRANSITION_CAP,
};
