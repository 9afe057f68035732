use rand::{Rng, RngCore};

use super::accept::{mh_accept, swap_accept};
use crate::error::{check_temperature, Result};
use crate::ising::{IsingModel, SpinConfig};
use crate::proposals::Proposer;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReplicaStats {
    pub proposals: u64,
    pub accepts: u64,
    pub swap_attempts: u64,
    pub swap_accepts: u64,
    pub shots: u64,
}

/// One ladder slot. `current_energy` always equals the energy of `current`.
#[derive(Debug, Clone, PartialEq)]
pub struct Replica {
    index: usize,
    temperature: f64,
    current: SpinConfig,
    current_energy: f64,
    best: SpinConfig,
    best_energy: f64,
    stats: ReplicaStats,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutcome {
    pub proposed_energy: f64,
    pub accepted: bool,
    /// Distance moved; 0 when rejected.
    pub hamming_distance: usize,
    pub shots_used: usize,
}

impl Replica {
    pub fn new(
        index: usize,
        temperature: f64,
        start: SpinConfig,
        model: &IsingModel,
    ) -> Result<Self> {
        check_temperature(temperature)?;
        let energy = model.energy(&start)?;
        Ok(Self {
            index,
            temperature,
            best: start.clone(),
            current: start,
            current_energy: energy,
            best_energy: energy,
            stats: ReplicaStats::default(),
        })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn current(&self) -> &SpinConfig {
        &self.current
    }

    pub fn current_energy(&self) -> f64 {
        self.current_energy
    }

    pub fn best(&self) -> &SpinConfig {
        &self.best
    }

    pub fn best_energy(&self) -> f64 {
        self.best_energy
    }

    pub fn stats(&self) -> ReplicaStats {
        self.stats
    }

    fn observe_current(&mut self) {
        if self.current_energy < self.best_energy {
            self.best_energy = self.current_energy;
            self.best = self.current.clone();
        }
    }

    /// One Metropolis-Hastings update. The proposal correction is omitted,
    /// which is exact only for symmetric proposers.
    pub fn step(
        &mut self,
        proposer: &dyn Proposer,
        model: &IsingModel,
        rng: &mut dyn RngCore,
    ) -> Result<StepOutcome> {
        let outcome = proposer.propose(&self.current, rng)?;
        let proposed_energy = model.energy(&outcome.candidate)?;
        let accepted = mh_accept(proposed_energy - self.current_energy, self.temperature, rng)?;
        self.stats.proposals += 1;
        self.stats.shots += outcome.shots_used as u64;
        let mut hamming_distance = 0;
        if accepted {
            self.stats.accepts += 1;
            hamming_distance = outcome.hamming_distance;
            self.current = outcome.candidate;
            self.current_energy = proposed_energy;
            self.observe_current();
        }
        Ok(StepOutcome {
            proposed_energy,
            accepted,
            hamming_distance,
            shots_used: outcome.shots_used,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapEvent {
    /// Colder slot of the pair; the partner is `lower + 1`.
    pub lower: usize,
    pub accepted: bool,
}

/// Adjacent slot pairs attempted in a round: `(0,1), (2,3), ...` on even
/// rounds and `(1,2), (3,4), ...` on odd ones.
pub fn exchange_pairs(replicas: usize, round: u64) -> impl Iterator<Item = (usize, usize)> {
    let start = (round % 2) as usize;
    (start..replicas.saturating_sub(1))
        .step_by(2)
        .map(|i| (i, i + 1))
}

/// One even-odd exchange round. Accepted pairs trade configurations; the
/// temperatures stay with their slots.
pub fn exchange_round<R: Rng + ?Sized>(
    replicas: &mut [Replica],
    round: u64,
    rng: &mut R,
) -> Result<Vec<SwapEvent>> {
    let mut events = Vec::new();
    for (i, j) in exchange_pairs(replicas.len(), round) {
        let (left, right) = replicas.split_at_mut(j);
        let (a, b) = (&mut left[i], &mut right[0]);
        let accepted = swap_accept(
            a.current_energy,
            b.current_energy,
            a.temperature,
            b.temperature,
            rng,
        )?;
        a.stats.swap_attempts += 1;
        b.stats.swap_attempts += 1;
        if accepted {
            a.stats.swap_accepts += 1;
            b.stats.swap_accepts += 1;
            std::mem::swap(&mut a.current, &mut b.current);
            std::mem::swap(&mut a.current_energy, &mut b.current_energy);
            a.observe_current();
            b.observe_current();
        }
        events.push(SwapEvent { lower: i, accepted });
    }
    Ok(events)
}
