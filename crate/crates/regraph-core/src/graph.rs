//! Validated simple regular graphs and their directed-edge structure.
//!
//! A [`Graph`] is a finite connected simple graph in which every vertex has
//! exactly `q + 1` neighbors, `q >= 1`. Vertices are dense integer ids
//! `0..vertex_count`. Construction validates everything; a `Graph` value is
//! immutable afterwards and safe to share between threads.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default number of pairing-model attempts before `random_regular` gives up.
pub const DEFAULT_REJECTION_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// A vertex degree differs from the common valence.
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    /// Self-loop or duplicate edge in the input.
    NotSimple { u: usize, v: usize },
    NotConnected,
    /// Valence q+1 < 2, i.e. q = 0.
    DegreeTooSmall,
    /// An edge references a vertex id outside `0..vertex_count`.
    EdgeOutOfRange { u: usize, v: usize, vertex_count: usize },
    InfeasibleParameters(&'static str),
    /// The rejection budget of the pairing model was exhausted.
    GenerationFailed { attempts: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::NotRegular {
                vertex,
                degree,
                expected,
            } => write!(
                f,
                "graph is not regular: vertex {vertex} has degree {degree}, expected {expected}"
            ),
            GraphError::NotSimple { u, v } => {
                write!(f, "graph is not simple: offending edge ({u}, {v})")
            }
            GraphError::NotConnected => write!(f, "graph is not connected"),
            GraphError::DegreeTooSmall => write!(f, "valence q+1 must be at least 2"),
            GraphError::EdgeOutOfRange { u, v, vertex_count } => write!(
                f,
                "edge ({u}, {v}) references a vertex outside 0..{vertex_count}"
            ),
            GraphError::InfeasibleParameters(msg) => write!(f, "infeasible parameters: {msg}"),
            GraphError::GenerationFailed { attempts } => write!(
                f,
                "random regular generation failed after {attempts} attempts"
            ),
        }
    }
}

impl core::error::Error for GraphError {}

/// One orientation of an undirected edge.
///
/// Directed edges come in reverse pairs; `reverse_id` indexes the opposite
/// orientation in the list returned by [`Graph::directed_edges`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectedEdge {
    pub tail: usize,
    pub head: usize,
    pub reverse_id: usize,
}

/// A validated finite connected simple `(q+1)`-regular graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    q: usize,
    /// Sorted neighbor lists.
    adj: Vec<Vec<usize>>,
    /// Undirected edges as `(min, max)` pairs, input order preserved.
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an explicit edge list, validating simplicity,
    /// regularity and connectivity. The inferred `q` is `degree - 1`.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::InfeasibleParameters("vertex_count must be positive"));
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::EdgeOutOfRange { u, v, vertex_count });
            }
            if u == v {
                return Err(GraphError::NotSimple { u, v });
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::NotSimple { u, v });
            }
            normalized.push(key);
            adj[u].push(v);
            adj[v].push(u);
        }
        let degree = adj[0].len();
        for (vertex, nbrs) in adj.iter().enumerate() {
            if nbrs.len() != degree {
                return Err(GraphError::NotRegular {
                    vertex,
                    degree: nbrs.len(),
                    expected: degree,
                });
            }
        }
        if degree < 2 {
            return Err(GraphError::DegreeTooSmall);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        let g = Graph {
            n: vertex_count,
            q: degree - 1,
            adj,
            edges: normalized,
        };
        if !g.is_connected() {
            return Err(GraphError::NotConnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// The branching number: valence is `q + 1`.
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.q + 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    fn is_connected(&self) -> bool {
        let mut visited = vec![false; self.n];
        let mut stack = vec![0usize];
        visited[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// True iff the vertex set admits a proper 2-coloring.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        let mut stack = vec![0usize];
        color[0] = 0;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    stack.push(w);
                } else if color[w] == color[v] {
                    return false;
                }
            }
        }
        true
    }

    /// All `2 * |E|` directed edges in a stable order: the two orientations of
    /// `edges()[k]` sit at indices `2k` and `2k + 1`, so `reverse_id` is the
    /// index with the low bit flipped.
    pub fn directed_edges(&self) -> Vec<DirectedEdge> {
        let mut out = Vec::with_capacity(2 * self.edges.len());
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            out.push(DirectedEdge {
                tail: u,
                head: v,
                reverse_id: 2 * k + 1,
            });
            out.push(DirectedEdge {
                tail: v,
                head: u,
                reverse_id: 2 * k,
            });
        }
        out
    }
}

/// Cycle on `n >= 3` vertices (`q = 1`).
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InfeasibleParameters("cycle needs n >= 3"));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// Complete graph on `n >= 3` vertices (`q = n - 2`).
pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InfeasibleParameters("complete needs n >= 3"));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10.
pub fn petersen() -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges)
}

/// The `d`-dimensional hypercube, `d >= 2` (`q = d - 1`).
pub fn hypercube(d: u32) -> Result<Graph, GraphError> {
    if d < 2 {
        return Err(GraphError::InfeasibleParameters("hypercube needs d >= 2"));
    }
    if d > 16 {
        return Err(GraphError::InfeasibleParameters("hypercube dimension too large"));
    }
    let n = 1usize << d;
    let mut edges = Vec::new();
    for u in 0..n {
        for bit in 0..d {
            let v = u ^ (1usize << bit);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Circulant graph on `n` vertices with the given connection offsets.
pub fn circulant(n: usize, offsets: &[usize]) -> Result<Graph, GraphError> {
    if n < 3 || offsets.is_empty() {
        return Err(GraphError::InfeasibleParameters(
            "circulant needs n >= 3 and at least one offset",
        ));
    }
    for &o in offsets {
        if o == 0 || o >= n {
            return Err(GraphError::InfeasibleParameters(
                "circulant offsets must lie in 1..n",
            ));
        }
    }
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    for u in 0..n {
        for &o in offsets {
            let v = (u + o) % n;
            let key = (u.min(v), u.max(v));
            if u != v && seen.insert(key) {
                edges.push(key);
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Random `degree`-regular graph on `n` vertices via the pairing
/// (configuration) model. Matchings with loops or multi-edges and
/// disconnected outcomes are rejected and re-sampled; deterministic for a
/// fixed seed.
pub fn random_regular(
    n: usize,
    degree: usize,
    seed: u64,
    rejection_budget: usize,
) -> Result<Graph, GraphError> {
    if degree < 2 || n <= degree {
        return Err(GraphError::InfeasibleParameters(
            "random_regular needs 2 <= degree < n",
        ));
    }
    if n * degree % 2 != 0 {
        return Err(GraphError::InfeasibleParameters(
            "random_regular needs n * degree even",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = Vec::with_capacity(n * degree);
    for _ in 0..rejection_budget {
        stubs.clear();
        for v in 0..n {
            stubs.extend(core::iter::repeat(v).take(degree));
        }
        stubs.shuffle(&mut rng);
        let mut edges = Vec::with_capacity(n * degree / 2);
        for pair in stubs.chunks_exact(2) {
            edges.push((pair[0], pair[1]));
        }
        match Graph::from_edges(n, &edges) {
            Ok(g) => return Ok(g),
            Err(GraphError::NotSimple { .. }) | Err(GraphError::NotConnected) => {}
            Err(e) => return Err(e),
        }
    }
    Err(GraphError::GenerationFailed {
        attempts: rejection_budget,
    })
}
