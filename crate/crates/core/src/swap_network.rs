//! Couplings reachable by a brick SWAP network on a line.
//!
//! Qubits sit on a line in `line_order`. An interaction round touches every
//! currently adjacent pair; SWAP layers alternate between even positions
//! `(0,1), (2,3), ...` and odd positions `(1,2), (3,4), ...`, starting even.
//! With `k` SWAP layers there are `k + 1` interaction rounds: one before the
//! first layer and one after each.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ising::{IsingModel, ProblemGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SwapPlanSpec", into = "SwapPlanSpec")]
pub struct SwapPlan {
    line_order: Vec<usize>,
    layers: usize,
    covered: BTreeSet<(usize, usize)>,
}

/// Serialized form of a [`SwapPlan`]; the covered set is recomputed on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapPlanSpec {
    pub line_order: Vec<usize>,
    pub layers: usize,
}

impl SwapPlan {
    /// `line_order[p]` is the vertex initially at line position `p`.
    pub fn new(line_order: Vec<usize>, layers: usize) -> Result<Self> {
        let covered = covered_pairs(layers, &line_order)?;
        Ok(Self {
            line_order,
            layers,
            covered,
        })
    }

    pub fn identity(n: usize, layers: usize) -> Result<Self> {
        Self::new((0..n).collect(), layers)
    }

    pub fn n(&self) -> usize {
        self.line_order.len()
    }

    pub fn line_order(&self) -> &[usize] {
        &self.line_order
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    /// Pairs `(u, v)` with `u < v`.
    pub fn covered(&self) -> &BTreeSet<(usize, usize)> {
        &self.covered
    }

    pub fn covers(&self, u: usize, v: usize) -> bool {
        self.covered.contains(&(u.min(v), u.max(v)))
    }
}

impl TryFrom<SwapPlanSpec> for SwapPlan {
    type Error = Error;

    fn try_from(spec: SwapPlanSpec) -> Result<Self> {
        Self::new(spec.line_order, spec.layers)
    }
}

impl From<SwapPlan> for SwapPlanSpec {
    fn from(plan: SwapPlan) -> Self {
        Self {
            line_order: plan.line_order,
            layers: plan.layers,
        }
    }
}

/// Every vertex pair adjacent on the line during some interaction round.
pub fn covered_pairs(layers: usize, line_order: &[usize]) -> Result<BTreeSet<(usize, usize)>> {
    let n = line_order.len();
    let mut seen = vec![false; n];
    for &v in line_order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::param(
                "line_order",
                format!("must be a permutation of 0..{n}"),
            ));
        }
    }
    let mut line = line_order.to_vec();
    let mut covered = BTreeSet::new();
    let mut interact = |line: &[usize]| {
        for w in line.windows(2) {
            covered.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
    };
    interact(&line);
    // after n layers the line is reversed and every pair has met
    for layer in 0..layers.min(n) {
        for p in (layer % 2..n.saturating_sub(1)).step_by(2) {
            line.swap(p, p + 1);
        }
        interact(&line);
    }
    Ok(covered)
}

/// The model with only the couplings the plan can realize. Fields and offset
/// are kept; chain energies must still come from the full model.
pub fn simplify_model(model: &IsingModel, plan: &SwapPlan) -> Result<IsingModel> {
    if plan.n() != model.n() {
        return Err(Error::LengthMismatch {
            expected: model.n(),
            got: plan.n(),
        });
    }
    Ok(model.retain_couplings(|i, j| plan.covers(i, j)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub covered_edges: usize,
    pub total_edges: usize,
    pub fraction: f64,
    /// Set when the fraction is a convention rather than a ratio.
    pub note: Option<String>,
}

/// Fraction of problem edges the plan realizes; an edgeless graph reports 1.
pub fn coverage_report(graph: &ProblemGraph, plan: &SwapPlan) -> Result<CoverageReport> {
    if plan.n() != graph.n() {
        return Err(Error::LengthMismatch {
            expected: graph.n(),
            got: plan.n(),
        });
    }
    let total_edges = graph.num_edges();
    let covered_edges = graph
        .edges()
        .iter()
        .filter(|&&(u, v)| plan.covers(u, v))
        .count();
    Ok(if total_edges == 0 {
        CoverageReport {
            covered_edges,
            total_edges,
            fraction: 1.0,
            note: Some("graph has no edges".into()),
        }
    } else {
        CoverageReport {
            covered_edges,
            total_edges,
            fraction: covered_edges as f64 / total_edges as f64,
            note: None,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ising::generators::{complete, path, random_graph};
    use crate::ising::SpinConfig;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_pairs(n: usize) -> BTreeSet<(usize, usize)> {
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect()
    }

    #[test]
    fn no_layers_is_line_adjacency() {
        let c = covered_pairs(0, &[0, 1, 2, 3]).unwrap();
        assert_eq!(c, BTreeSet::from([(0, 1), (1, 2), (2, 3)]));
        let c = covered_pairs(0, &[2, 0, 3, 1]).unwrap();
        assert_eq!(c, BTreeSet::from([(0, 2), (0, 3), (1, 3)]));
    }

    #[test]
    fn one_layer_by_hand() {
        // line 0 1 2 3 -> even swaps -> 1 0 3 2, new neighbours (0,3)
        let c = covered_pairs(1, &[0, 1, 2, 3]).unwrap();
        assert_eq!(c, BTreeSet::from([(0, 1), (1, 2), (2, 3), (0, 3)]));
    }

    #[test]
    fn full_network_covers_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for n in 1..=12 {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            assert_eq!(covered_pairs(n, &order).unwrap(), all_pairs(n), "n = {n}");
            assert_eq!(covered_pairs(n + 3, &order).unwrap(), all_pairs(n));
        }
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(covered_pairs(1, &[0, 0, 1]).is_err());
        assert!(covered_pairs(1, &[0, 3, 1]).is_err());
        assert!(SwapPlan::new(vec![1, 2], 0).is_err());
    }

    #[test]
    fn k4_examples() {
        let g = complete(4);
        let model = IsingModel::mis(&g, 2.0).unwrap();
        let plan = SwapPlan::identity(4, 0).unwrap();
        assert_eq!(simplify_model(&model, &plan).unwrap().quadratic().len(), 3);
        let report = coverage_report(&g, &plan).unwrap();
        assert_eq!((report.covered_edges, report.total_edges), (3, 6));
        assert_eq!(report.fraction, 0.5);

        let full = SwapPlan::identity(4, 4).unwrap();
        assert_eq!(simplify_model(&model, &full).unwrap(), model);
        assert_eq!(coverage_report(&g, &full).unwrap().fraction, 1.0);

        let p = path(4);
        let pm = IsingModel::mis(&p, 2.0).unwrap();
        assert_eq!(simplify_model(&pm, &plan).unwrap(), pm);

        let edgeless = ProblemGraph::new(4, []).unwrap();
        let r = coverage_report(&edgeless, &plan).unwrap();
        assert_eq!(r.fraction, 1.0);
        assert!(r.note.is_some());
        assert!(simplify_model(&model, &SwapPlan::identity(3, 0).unwrap()).is_err());
    }

    #[test]
    fn plan_serializes_without_covered_set() {
        let plan = SwapPlan::new(vec![3, 1, 0, 2], 2).unwrap();
        let json = serde_json::to_string(&plan).unwrap();
        assert_eq!(json, r#"{"line_order":[3,1,0,2],"layers":2}"#);
        assert_eq!(serde_json::from_str::<SwapPlan>(&json).unwrap(), plan);
    }

    proptest! {
        #[test]
        fn coverage_is_monotone(n in 1usize..=10, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let g = random_graph(n, 0.5, &mut rng);
            let mut previous = BTreeSet::new();
            let mut previous_fraction = 0.0;
            for k in 0..=n {
                let plan = SwapPlan::new(order.clone(), k).unwrap();
                prop_assert!(previous.is_subset(plan.covered()));
                prop_assert!(plan.covered().is_subset(&all_pairs(n)));
                let f = coverage_report(&g, &plan).unwrap().fraction;
                prop_assert!(f >= previous_fraction);
                previous = plan.covered().clone();
                previous_fraction = f;
            }
        }

        #[test]
        fn simplified_model_differs_only_on_dropped_edges(n in 2usize..=8, k in 0usize..4, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(n, 0.6, &mut rng);
            let model = IsingModel::mis(&g, 2.0).unwrap();
            let plan = SwapPlan::identity(n, k).unwrap();
            let simple = simplify_model(&model, &plan).unwrap();
            prop_assert_eq!(simple.linear(), model.linear());
            prop_assert_eq!(simple.offset(), model.offset());
            for _ in 0..20 {
                let s = SpinConfig::random(n, &mut rng);
                // E_full - E_simple = -Σ_dropped J_ij z_i z_j
                let dropped: f64 = model
                    .quadratic()
                    .iter()
                    .filter(|c| !plan.covers(c.i, c.j))
                    .map(|c| -c.value * f64::from(s.spin(c.i)) * f64::from(s.spin(c.j)))
                    .sum();
                let diff = model.energy(&s).unwrap() - simple.energy(&s).unwrap();
                prop_assert!((diff - dropped).abs() < 1e-12);
            }
        }
    }
}
