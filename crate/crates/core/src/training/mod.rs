//! Classical pre-training of the proposal circuit.
//!
//! Angles are trained on exact expectations: a depth-1 search from the
//! origin, then three equal-angle depth-2 restarts seeded from the depth-1
//! optimum. The penalty weight is picked from a grid so that objective and
//! constraint expectations balance.

mod expectation;
mod lambda;
mod nelder_mead;
mod train;

pub use expectation::{expectation_energy, Evaluator};
pub use lambda::{tune_lambda, LambdaDiagnostic, LambdaTuning};
pub use nelder_mead::{minimize, Minimum, NelderMeadOptions};
pub use train::{
    train, train_p1, train_p2_equal_angles, P1Optimum, RestartRecord, RestartSeed, TrainedParams,
    TrainingOptions,
};
