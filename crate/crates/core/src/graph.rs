//! Immutable simple undirected graphs on at most [`MAX_VERTICES`] vertices.
//!
//! Adjacency is stored as one `u64` bitset row per vertex, so neighbourhood
//! operations (intersection, reachability, degree) are single word ops.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest order representable (single-byte graph6 size field).
pub const MAX_VERTICES: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph on {0} vertices exceeds the {MAX_VERTICES}-vertex limit")]
    TooLarge(usize),
}

/// A simple undirected graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an edge list. Repeated edges (in either
    /// orientation) are merged.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(a, b) in edges {
            g.insert_edge(a, b)?;
        }
        Ok(g)
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        let all = g.vertex_mask();
        for (v, row) in g.adj.iter_mut().enumerate() {
            *row = all & !(1u64 << v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges)
    }

    /// Builds a graph directly from adjacency rows. Rows must be symmetric and
    /// loop-free; only used by trusted in-crate constructors.
    pub(crate) fn from_rows_unchecked(adj: Vec<u64>) -> Self {
        debug_assert!(adj.len() <= MAX_VERTICES);
        Self { n: adj.len(), adj }
    }

    fn insert_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        for v in [a, b] {
            if v >= self.n {
                return Err(GraphError::IndexOutOfRange {
                    index: v,
                    n: self.n,
                });
            }
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Bitmask with one bit per vertex.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(i, j)` with `i < j`, ordered by `j` then `i`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for j in 0..self.n {
            for i in bits(self.adj[j] & ((1u64 << j) - 1)) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) + 1 == self.n)
    }

    /// Vertices reachable from `start` using only vertices in `allowed`.
    /// `start` itself is always included.
    pub fn component_within(&self, start: usize, allowed: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Whether the subgraph induced by `subset` is connected (the empty set
    /// counts as connected).
    pub fn is_connected_within(&self, subset: u64) -> bool {
        if subset == 0 {
            return true;
        }
        let start = subset.trailing_zeros() as usize;
        self.component_within(start, subset) == subset
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertex_mask())
    }

    /// `self + other`: disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.disjoint_union(other)?;
        let left = self.vertex_mask();
        let right = other.vertex_mask() << self.n;
        for v in 0..self.n {
            g.adj[v] |= right;
        }
        for v in self.n..g.n {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    /// Disjoint union; `other`'s vertices are relabelled to follow `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|row| row << self.n));
        Ok(Graph { n, adj })
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut sorted: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        sorted.sort_unstable();
        DegreeSequence { sorted }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Iterates the set bits of a mask in ascending order.
#[inline]
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// 1-based index into a degree sequence, e.g. `δ+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConditionIndex(usize);

impl ConditionIndex {
    /// `k` must be at least 1; index 0 is mapped to an index that is never
    /// applicable.
    pub fn new(k: usize) -> Self {
        Self(k)
    }

    /// `δ + offset`.
    pub fn delta_plus(ds: &DegreeSequence, offset: usize) -> Self {
        Self(ds.min_degree() + offset)
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Value of `d_k`, or `Inapplicable` when `k` lies outside `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexedDegree {
    Value(usize),
    Inapplicable,
}

impl IndexedDegree {
    pub fn value(self) -> Option<usize> {
        match self {
            IndexedDegree::Value(v) => Some(v),
            IndexedDegree::Inapplicable => None,
        }
    }
}

/// Vertex degrees sorted ascending: `d_1 ≤ d_2 ≤ … ≤ d_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeSequence {
    sorted: Vec<usize>,
}

impl DegreeSequence {
    pub fn from_degrees(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable();
        Self { sorted: degrees }
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.sorted
    }

    /// `δ = d_1`; 0 for the empty sequence.
    pub fn min_degree(&self) -> usize {
        self.sorted.first().copied().unwrap_or(0)
    }

    /// `d_k` with 1-based `k`.
    pub fn indexed(&self, k: ConditionIndex) -> IndexedDegree {
        match k.0 {
            0 => IndexedDegree::Inapplicable,
            k if k > self.sorted.len() => IndexedDegree::Inapplicable,
            k => IndexedDegree::Value(self.sorted[k - 1]),
        }
    }

    /// `d_k` with 1-based `k`, `None` when inapplicable.
    pub fn d(&self, k: usize) -> Option<usize> {
        self.indexed(ConditionIndex(k)).value()
    }

    /// `d_{δ+offset}`.
    pub fn d_delta_plus(&self, offset: usize) -> IndexedDegree {
        self.indexed(ConditionIndex::delta_plus(self, offset))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_and_five_cycle() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!((0..3).all(|v| k3.degree(v) == 2));
        assert_eq!(k3, Graph::complete(3).unwrap());

        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(c5.degree_sequence().as_slice(), &[2, 2, 2, 2, 2]);
        assert_eq!(c5, Graph::cycle(5).unwrap());
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            Graph::new(3, &[(0, 3)]),
            Err(GraphError::IndexOutOfRange { index: 3, n: 3 })
        );
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::empty(63), Err(GraphError::TooLarge(63)));
    }

    #[test]
    fn duplicate_edges_merge() {
        let g = Graph::new(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn join_and_union_examples() {
        let k1 = Graph::complete(1).unwrap();
        let k2 = Graph::complete(2).unwrap();
        let bowtie = k1.join(&k2.disjoint_union(&k2).unwrap()).unwrap();
        assert_eq!(bowtie.order(), 5);
        assert_eq!(bowtie.degree_sequence().as_slice(), &[2, 2, 2, 2, 4]);

        let e2 = k2.join(&Graph::empty(3).unwrap()).unwrap();
        assert_eq!(e2.order(), 5);
        assert_eq!(e2.edge_count(), 7);

        let two = k1.disjoint_union(&k1).unwrap();
        assert_eq!((two.order(), two.edge_count()), (2, 0));

        let big = Graph::empty(40).unwrap();
        assert_eq!(big.join(&big), Err(GraphError::TooLarge(80)));
    }

    #[test]
    fn indexed_degree_examples() {
        let k4 = Graph::complete(4).unwrap().degree_sequence();
        assert_eq!(k4.d_delta_plus(1), IndexedDegree::Value(3));
        assert_eq!(k4.d_delta_plus(2), IndexedDegree::Inapplicable);

        let e2 = DegreeSequence::from_degrees(vec![4, 2, 2, 4, 2]);
        assert_eq!(e2.as_slice(), &[2, 2, 2, 4, 4]);
        assert_eq!(e2.d_delta_plus(2), IndexedDegree::Value(4));
        assert_eq!(
            e2.indexed(ConditionIndex::new(0)),
            IndexedDegree::Inapplicable
        );
    }

    #[test]
    fn edges_are_ordered_by_column() {
        let g = Graph::new(4, &[(2, 3), (0, 1), (0, 3), (1, 2)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (0, 3), (2, 3)]);
    }
}
