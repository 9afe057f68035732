use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One replica's state after one iteration.
///
/// Iteration 0 records the initial configurations. `hamming_distance` is the
/// distance moved by the local update, so it is 0 on rejection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub run_id: u64,
    pub iteration: u64,
    pub replica: usize,
    pub temperature: f64,
    pub proposed_energy: f64,
    pub accepted: bool,
    pub current_energy: f64,
    pub best_energy: f64,
    pub hamming_distance: usize,
    pub swapped: bool,
    pub shots_used: usize,
}

pub trait TraceSink {
    fn record(&mut self, record: &TraceRecord) -> Result<()>;

    /// Called after every iteration that ended with an exchange round, and at the end.
    fn flush(&mut self) -> Result<()> {
        Ok(())
    }
}

impl TraceSink for Vec<TraceRecord> {
    fn record(&mut self, record: &TraceRecord) -> Result<()> {
        self.push(record.clone());
        Ok(())
    }
}

/// Discards every record.
#[derive(Debug, Clone, Copy, Default)]
pub struct NullSink;

impl TraceSink for NullSink {
    fn record(&mut self, _record: &TraceRecord) -> Result<()> {
        Ok(())
    }
}
