//! Metropolis-Hastings replicas and the parallel-tempering loop.
//!
//! Temperatures stay attached to ladder slots; exchanges move configurations
//! between slots. Replica `i` draws from stream `i + 1` of the run seed and
//! exchanges draw from stream 0, so serial and parallel stepping agree.

mod accept;
mod ladder;
mod replica;
mod run;
mod trace;

pub use accept::{mh_accept, swap_accept};
pub use ladder::{t_high_from_spectrum, x_max, LadderSpec, TemperatureLadder, XMaxRule};
pub use replica::{exchange_pairs, exchange_round, Replica, ReplicaStats, StepOutcome, SwapEvent};
pub use run::{
    run_parallel_tempering, run_with_sink, RunConfig, RunResult, SwapPairStats,
    DEFAULT_MAX_ITERATIONS,
};
pub use trace::{NullSink, TraceRecord, TraceSink};
