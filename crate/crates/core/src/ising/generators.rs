//! Small graph families used by tests, benches, and the CLI.

use rand::Rng;

use super::ProblemGraph;

/// Erdős–Rényi `G(n, p)`; each pair `i < j` is drawn in lexicographic order.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> ProblemGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((i, j));
            }
        }
    }
    ProblemGraph::new(n, edges).expect("generated edges are valid")
}

pub fn path(n: usize) -> ProblemGraph {
    ProblemGraph::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
}

pub fn complete(n: usize) -> ProblemGraph {
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    ProblemGraph::new(n, edges).expect("complete edges are valid")
}

/// Five vertices, five edges: the path 0-1-2-3-4 plus the chord 1-3.
///
/// Its maximum independent set `{0, 2, 4}` is unique, and there are five
/// independent sets of size two.
pub fn five_node_instance() -> ProblemGraph {
    ProblemGraph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)]).expect("valid edges")
}
