//! Exhaustive oracles for small instances.

use super::{IsingModel, ProblemGraph, SpinConfig, BRUTE_FORCE_CAP};
use crate::error::{Error, Result};

fn check_cap(what: &'static str, n: usize) -> Result<()> {
    if n > BRUTE_FORCE_CAP {
        Err(Error::TooLarge {
            what,
            n,
            cap: BRUTE_FORCE_CAP,
        })
    } else {
        Ok(())
    }
}

/// All maximum independent sets as statevector indices, ascending.
pub fn maximum_independent_sets(graph: &ProblemGraph) -> Result<(usize, Vec<usize>)> {
    check_cap("maximum independent set enumeration", graph.n())?;
    let adj = graph.adjacency_masks();
    let mut best = 0u32;
    let mut sets = Vec::new();
    for mask in 0usize..1 << graph.n() {
        let m = mask as u64;
        let independent = (0..graph.n()).all(|v| (m >> v) & 1 == 0 || adj[v] & m == 0);
        if !independent {
            continue;
        }
        let size = m.count_ones();
        if size > best {
            best = size;
            sets.clear();
        }
        if size == best {
            sets.push(mask);
        }
    }
    Ok((best as usize, sets))
}

/// Size of a maximum independent set.
pub fn independence_number(graph: &ProblemGraph) -> Result<usize> {
    maximum_independent_sets(graph).map(|(size, _)| size)
}

/// Minimum energy and every basis index attaining it within `tol`.
pub fn ground_states(model: &IsingModel, tol: f64) -> Result<(f64, Vec<usize>)> {
    check_cap("ground-state enumeration", model.n())?;
    let table = model.energy_table()?;
    let min = table.iter().copied().fold(f64::INFINITY, f64::min);
    let states = (0..table.len())
        .filter(|&i| table[i] <= min + tol)
        .collect();
    Ok((min, states))
}

/// One maximum independent set (the smallest index), as a configuration.
pub fn maximum_independent_set(graph: &ProblemGraph) -> Result<SpinConfig> {
    let (_, sets) = maximum_independent_sets(graph)?;
    Ok(SpinConfig::from_index(sets[0], graph.n()))
}
