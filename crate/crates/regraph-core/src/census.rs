//! Exact counting and enumeration of closed paths and geodesics on a graph.
//!
//! Closed paths are cyclic vertex sequences with the starting point
//! significant; a trajectory is a path modulo rotation. Cyclic reduction
//! deletes backtrack pairs until the word is either empty (contractible) or a
//! geodesic: a cyclic word with `v_i != v_{i+2}` throughout. Counting is done
//! in big integers; `p_l` grows like `(q+1)^l` and overflows machine words
//! quickly.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CensusError {
    /// An enumeration was asked to exceed its configured budget.
    BudgetExceeded {
        what: &'static str,
        limit: usize,
        requested: usize,
    },
    /// A vertex sequence that is not a closed path of the graph.
    NotAPath { index: usize },
}

impl fmt::Display for CensusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusError::BudgetExceeded {
                what,
                limit,
                requested,
            } => write!(f, "budget exceeded: {what} {requested} > limit {limit}"),
            CensusError::NotAPath { index } => {
                write!(f, "vertex sequence breaks adjacency at position {index}")
            }
        }
    }
}

impl core::error::Error for CensusError {}

/// Budgets guarding the brute-force enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest graph the path enumerations will touch.
    pub max_vertices: usize,
    /// Longest path length the enumerations will attempt.
    pub max_length: usize,
    /// Cap on DFS steps in geodesic enumeration.
    pub max_steps: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_vertices: 16,
            max_length: 12,
            max_steps: 50_000_000,
        }
    }
}

/// A closed path: cyclic vertex sequence with consecutive adjacency.
///
/// A single-vertex word is the path of length 0 based at that vertex (no
/// edges traversed); otherwise the length is the number of vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClosedPath {
    vertices: Vec<usize>,
}

impl ClosedPath {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<ClosedPath, CensusError> {
        if vertices.len() >= 2 {
            for i in 0..vertices.len() {
                let next = vertices[(i + 1) % vertices.len()];
                if !g.has_edge(vertices[i], next) {
                    return Err(CensusError::NotAPath { index: i });
                }
            }
        }
        Ok(ClosedPath { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn length(&self) -> usize {
        if self.vertices.len() == 1 {
            0
        } else {
            self.vertices.len()
        }
    }
}

/// A geodesic trajectory class: the lexicographically minimal rotation of a
/// cyclically reduced word, with primitivity data.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GeodesicClass {
    length: usize,
    canonical_word: Vec<usize>,
    lambda: usize,
    is_primitive: bool,
}

impl GeodesicClass {
    /// Canonicalizes a cyclically reduced word. The caller guarantees the
    /// word is a geodesic (`v_i != v_{i+2}` cyclically, length >= 3).
    pub fn from_word(word: &[usize]) -> GeodesicClass {
        let canonical_word = minimal_rotation(word);
        let lambda = primitive_root_length(&canonical_word);
        GeodesicClass {
            length: word.len(),
            canonical_word,
            lambda,
            is_primitive: lambda == word.len(),
        }
    }

    pub fn canonical_word(&self) -> &[usize] {
        &self.canonical_word
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Length of the underlying primitive trajectory.
    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn is_primitive(&self) -> bool {
        self.is_primitive
    }
}

/// Image of a closed path under cyclic reduction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ReducedClass {
    Contractible,
    Geodesic(GeodesicClass),
}

/// Which end of the word the reduction scans from; both must agree (tested).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionStrategy {
    Leftmost,
    Rightmost,
}

/// Exact `p_l` and `gp_l` columns for a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    /// `p[l]`: closed paths of length `l`; `p[0] = |V|`.
    pub p: Vec<BigInt>,
    /// `gp[l]`: geodesic paths of length `l`; zero below the girth.
    pub gp: Vec<BigInt>,
}

impl CensusTable {
    pub fn compute(g: &Graph, l_max: usize) -> CensusTable {
        CensusTable {
            p: count_closed_paths(g, l_max),
            gp: count_geodesic_paths(g, l_max),
        }
    }
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    let term = &a[i][k] * &b[k][j];
                    out[i][j] += term;
                }
            }
        }
    }
    out
}

fn trace(m: &[Vec<BigInt>]) -> BigInt {
    (0..m.len()).map(|i| m[i][i].clone()).sum()
}

/// `p_l = tr T^l` for `l = 0..=l_max`, by exact big-integer matrix powers of
/// the adjacency matrix.
pub fn count_closed_paths(g: &Graph, l_max: usize) -> Vec<BigInt> {
    let n = g.vertex_count();
    let mut adjacency = vec![vec![BigInt::zero(); n]; n];
    for &(u, v) in g.edges() {
        adjacency[u][v] = BigInt::from(1);
        adjacency[v][u] = BigInt::from(1);
    }
    let mut out = Vec::with_capacity(l_max + 1);
    out.push(BigInt::from(n));
    let mut power = adjacency.clone();
    for _ in 1..=l_max {
        out.push(trace(&power));
        power = mat_mul(&power, &adjacency);
    }
    out.truncate(l_max + 1);
    out
}

/// `gp_l` for `l = 0..=l_max` as the trace of powers of the non-backtracking
/// directed-edge operator: edge `e` may be followed by `f` when
/// `head(e) = tail(f)` and `f` is not the reverse of `e`. Entry 0 is 0 by
/// convention (geodesics are long).
pub fn count_geodesic_paths(g: &Graph, l_max: usize) -> Vec<BigInt> {
    let des = g.directed_edges();
    let m = des.len();
    let mut transfer = vec![vec![BigInt::zero(); m]; m];
    for (i, e) in des.iter().enumerate() {
        for (j, f) in des.iter().enumerate() {
            if e.head == f.tail && e.reverse_id != j {
                transfer[i][j] = BigInt::from(1);
            }
        }
    }
    let mut out = Vec::with_capacity(l_max + 1);
    out.push(BigInt::zero());
    let mut power = transfer.clone();
    for _ in 1..=l_max {
        out.push(trace(&power));
        power = mat_mul(&power, &transfer);
    }
    out.truncate(l_max + 1);
    out
}

/// Exhaustive list of all closed paths of length `l`, starting point
/// significant.
pub fn enumerate_closed_paths(
    g: &Graph,
    l: usize,
    budget: &Budget,
) -> Result<Vec<ClosedPath>, CensusError> {
    if g.vertex_count() > budget.max_vertices {
        return Err(CensusError::BudgetExceeded {
            what: "vertices",
            limit: budget.max_vertices,
            requested: g.vertex_count(),
        });
    }
    if l > budget.max_length {
        return Err(CensusError::BudgetExceeded {
            what: "path length",
            limit: budget.max_length,
            requested: l,
        });
    }
    if l == 0 {
        return Ok((0..g.vertex_count())
            .map(|v| ClosedPath { vertices: vec![v] })
            .collect());
    }
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(l);
    for start in 0..g.vertex_count() {
        word.push(start);
        extend_paths(g, l, &mut word, &mut out);
        word.pop();
    }
    Ok(out)
}

fn extend_paths(g: &Graph, l: usize, word: &mut Vec<usize>, out: &mut Vec<ClosedPath>) {
    if word.len() == l {
        if g.has_edge(word[l - 1], word[0]) {
            out.push(ClosedPath {
                vertices: word.clone(),
            });
        }
        return;
    }
    let last = *word.last().unwrap();
    for &next in g.neighbors(last) {
        word.push(next);
        extend_paths(g, l, word, out);
        word.pop();
    }
}

/// Cyclic reduction: repeatedly deletes backtrack pairs (`v, x, v` becomes
/// `v`) until no `v_i = v_{i+2}` survives cyclically. The result does not
/// depend on deletion order.
pub fn cyclic_reduce(path: &ClosedPath) -> ReducedClass {
    cyclic_reduce_with(path.vertices(), ReductionStrategy::Leftmost)
}

/// Cyclic reduction with an explicit scan strategy; exposed so the
/// order-independence can be checked directly.
pub fn cyclic_reduce_with(word: &[usize], strategy: ReductionStrategy) -> ReducedClass {
    let mut w: Vec<usize> = if word.len() == 1 {
        Vec::new()
    } else {
        word.to_vec()
    };
    loop {
        if w.len() < 2 {
            break;
        }
        let n = w.len();
        let hit = match strategy {
            ReductionStrategy::Leftmost => (0..n).find(|&i| w[i] == w[(i + 2) % n]),
            ReductionStrategy::Rightmost => (0..n).rev().find(|&i| w[i] == w[(i + 2) % n]),
        };
        match hit {
            Some(i) => {
                let a = (i + 1) % n;
                let b = (i + 2) % n;
                if a < b {
                    w.remove(b);
                    w.remove(a);
                } else {
                    w.remove(a);
                    w.remove(b);
                }
            }
            None => break,
        }
    }
    if w.is_empty() {
        ReducedClass::Contractible
    } else {
        ReducedClass::Geodesic(GeodesicClass::from_word(&w))
    }
}

fn minimal_rotation(word: &[usize]) -> Vec<usize> {
    let n = word.len();
    let mut best = 0;
    for start in 1..n {
        for k in 0..n {
            let a = word[(start + k) % n];
            let b = word[(best + k) % n];
            if a < b {
                best = start;
                break;
            }
            if a > b {
                break;
            }
        }
    }
    (0..n).map(|k| word[(best + k) % n]).collect()
}

/// Smallest period `d` dividing the length such that the cyclic word is the
/// `(len/d)`-th power of its length-`d` prefix.
pub fn primitive_root_length(word: &[usize]) -> usize {
    let n = word.len();
    assert!(n > 0, "empty word has no primitive root");
    'outer: for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        for i in d..n {
            if word[i] != word[i - d] {
                continue 'outer;
            }
        }
        return d;
    }
    n
}

/// All geodesic trajectory classes of length `3..=l_max`, each once at its
/// canonical rotation.
pub fn enumerate_geodesics(
    g: &Graph,
    l_max: usize,
    budget: &Budget,
) -> Result<Vec<GeodesicClass>, CensusError> {
    let mut words: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut steps = 0usize;
    let mut word = Vec::new();
    for l in 3..=l_max {
        for start in 0..g.vertex_count() {
            word.push(start);
            extend_geodesics(g, l, &mut word, &mut words, &mut steps, budget.max_steps)?;
            word.pop();
        }
    }
    Ok(words.iter().map(|w| GeodesicClass::from_word(w)).collect())
}

fn extend_geodesics(
    g: &Graph,
    l: usize,
    word: &mut Vec<usize>,
    out: &mut BTreeSet<Vec<usize>>,
    steps: &mut usize,
    max_steps: usize,
) -> Result<(), CensusError> {
    *steps += 1;
    if *steps > max_steps {
        return Err(CensusError::BudgetExceeded {
            what: "geodesic enumeration steps",
            limit: max_steps,
            requested: *steps,
        });
    }
    let k = word.len();
    if k == l {
        // Close the cycle: adjacency plus the two wrap-around
        // non-backtracking constraints.
        if g.has_edge(word[l - 1], word[0]) && word[l - 2] != word[0] && word[l - 1] != word[1] {
            out.insert(minimal_rotation(word));
        }
        return Ok(());
    }
    let last = word[k - 1];
    for &next in g.neighbors(last) {
        if k >= 2 && next == word[k - 2] {
            continue;
        }
        word.push(next);
        extend_geodesics(g, l, word, out, steps, max_steps)?;
        word.pop();
    }
    Ok(())
}

/// Tallies all closed paths of length `l` by their cyclic-reduction image.
/// The contractible bucket is always present.
pub fn homotopy_census(
    g: &Graph,
    l: usize,
    budget: &Budget,
) -> Result<BTreeMap<ReducedClass, BigInt>, CensusError> {
    let mut census: BTreeMap<ReducedClass, BigInt> = BTreeMap::new();
    census.insert(ReducedClass::Contractible, BigInt::zero());
    for path in enumerate_closed_paths(g, l, budget)? {
        *census.entry(cyclic_reduce(&path)).or_insert_with(BigInt::zero) += 1;
    }
    Ok(census)
}
