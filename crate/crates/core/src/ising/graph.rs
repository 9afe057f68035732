//! Simple undirected graphs and the two text formats they are read from.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored normalized as `(u, v)` with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct ProblemGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adjacency: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for ProblemGraph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        ProblemGraph::new(raw.n, raw.edges)
    }
}

impl ProblemGraph {
    /// Builds a graph, rejecting self-loops, duplicates (in either orientation)
    /// and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
        }
        let edges: Vec<_> = seen.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            n,
            edges,
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Neighbor sets as bitmasks. Only meaningful for `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        debug_assert!(self.n <= 64);
        self.adjacency
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect()
    }

    /// Parses a plain edge list: one `u v` pair per line, 0-indexed, `#` starts a comment.
    ///
    /// The vertex count is one more than the largest endpoint unless a
    /// `# n <count>` line is present, which allows trailing isolated vertices.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut declared_n = None;
        let mut max_vertex = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if let Some(comment) = line.strip_prefix('#') {
                let mut parts = comment.split_whitespace();
                if parts.next() == Some("n") {
                    let n = parts
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| parse_err(line_no, "malformed '# n <count>' line"))?;
                    declared_n = Some(n);
                }
                continue;
            }
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(parse_err(line_no, "expected two vertex indices"));
            }
            let u = parse_index(fields[0], line_no)?;
            let v = parse_index(fields[1], line_no)?;
            max_vertex = Some(max_vertex.unwrap_or(0).max(u).max(v));
            edges.push((u, v));
        }
        let n = match (declared_n, max_vertex) {
            (Some(n), _) => n,
            (None, Some(m)) => m + 1,
            (None, None) => 0,
        };
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        Self::new(n, edges)
    }

    /// Parses the DIMACS-like format: a `p <name?> <n> <m>` header followed by
    /// `e u v` lines with 1-indexed vertices. `c` lines are comments.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "p" => {
                    if header.is_some() {
                        return Err(parse_err(line_no, "second 'p' header"));
                    }
                    // `p <n> <m>` or `p edge <n> <m>`
                    let nums: Vec<&str> = fields[1..]
                        .iter()
                        .copied()
                        .filter(|f| f.chars().all(|c| c.is_ascii_digit()))
                        .collect();
                    if nums.len() != 2 {
                        return Err(parse_err(line_no, "header must be 'p <n> <m>'"));
                    }
                    header = Some((
                        parse_index(nums[0], line_no)?,
                        parse_index(nums[1], line_no)?,
                    ));
                }
                "e" => {
                    let (n, _) =
                        header.ok_or_else(|| parse_err(line_no, "edge before 'p' header"))?;
                    if fields.len() != 3 {
                        return Err(parse_err(line_no, "expected 'e u v'"));
                    }
                    let u = parse_index(fields[1], line_no)?;
                    let v = parse_index(fields[2], line_no)?;
                    if u == 0 || v == 0 || u > n || v > n {
                        return Err(parse_err(line_no, format!("vertex out of range 1..={n}")));
                    }
                    edges.push((u - 1, v - 1));
                }
                other => return Err(parse_err(line_no, format!("unknown record '{other}'"))),
            }
        }
        let (n, m) = header.ok_or_else(|| parse_err(0, "missing 'p' header"))?;
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if edges.len() != m {
            return Err(parse_err(
                0,
                format!("header declares {m} edges, found {}", edges.len()),
            ));
        }
        Self::new(n, edges)
    }

    /// Serializes as a plain edge list with an `# n` line, readable by
    /// [`ProblemGraph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# n {}\n", self.n);
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("'{token}' is not a vertex index")))
}
