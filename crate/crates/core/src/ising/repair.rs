//! Greedy feasibility repair and sample-quality scoring.

use super::{ProblemGraph, SpinConfig};
use crate::error::{Error, Result};

/// Makes `config` an independent set, then greedily grows it.
///
/// Removal: while conflicts remain, deselect the vertex with the most
/// violated incident edges (ties to the lowest index). Growth: visit
/// unselected vertices by ascending degree (ties to the lowest index) and
/// select each one with no selected neighbor.
pub fn repair(graph: &ProblemGraph, config: &SpinConfig) -> Result<SpinConfig> {
    config.check_len(graph.n())?;
    let n = graph.n();
    let mut out = config.clone();
    let mut conflicts: Vec<usize> = (0..n)
        .map(|v| {
            if out.get(v) {
                graph.neighbors(v).iter().filter(|&&u| out.get(u)).count()
            } else {
                0
            }
        })
        .collect();

    loop {
        let worst = (0..n)
            .filter(|&v| conflicts[v] > 0)
            .max_by(|&a, &b| conflicts[a].cmp(&conflicts[b]).then(b.cmp(&a)));
        let Some(v) = worst else { break };
        out.set(v, false);
        conflicts[v] = 0;
        for &u in graph.neighbors(v) {
            if out.get(u) {
                conflicts[u] -= 1;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).filter(|&v| !out.get(v)).collect();
    order.sort_by_key(|&v| (graph.degree(v), v));
    for v in order {
        if graph.neighbors(v).iter().all(|&u| !out.get(u)) {
            out.set(v, true);
        }
    }
    Ok(out)
}

/// Mean of `|S| / optimum` over feasible samples, after [`repair`] when
/// `apply_repair` is set. `None` means no feasible samples.
pub fn approximation_ratio(
    graph: &ProblemGraph,
    samples: &[SpinConfig],
    optimum: usize,
    apply_repair: bool,
) -> Result<Option<f64>> {
    if optimum == 0 {
        return Err(Error::param("optimum", "must be positive"));
    }
    let mut total = 0.0;
    let mut count = 0usize;
    for s in samples {
        let candidate = if apply_repair {
            repair(graph, s)?
        } else if super::is_independent(graph, s)? {
            s.clone()
        } else {
            continue;
        };
        total += candidate.count_ones() as f64 / optimum as f64;
        count += 1;
    }
    Ok((count > 0).then(|| total / count as f64))
}
