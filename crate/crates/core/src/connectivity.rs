//! Vertex connectivity by exhaustive cut search.

use serde::{Deserialize, Serialize};

use crate::graph::{bits, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectivity {
    pub kappa: usize,
    /// A minimum separating set (empty for complete or disconnected graphs).
    pub min_cut: Vec<usize>,
    pub cut_vertices: Vec<usize>,
}

impl Connectivity {
    pub fn is_two_connected(&self) -> bool {
        self.kappa >= 2
    }
}

/// Vertex connectivity κ: `n − 1` for complete graphs, 0 for disconnected
/// graphs, otherwise the size of a smallest vertex set whose removal
/// disconnects the graph.
pub fn vertex_connectivity(g: &Graph) -> Connectivity {
    let n = g.order();
    let cut_vertices = cut_vertices(g);
    if g.is_complete() {
        return Connectivity {
            kappa: n.saturating_sub(1),
            min_cut: Vec::new(),
            cut_vertices,
        };
    }
    let all = g.vertex_mask();
    // Non-complete graphs have a separating set no larger than δ.
    for k in 0..=g.min_degree() {
        if let Some(cut) = find_cut_of_size(g, all, k) {
            return Connectivity {
                kappa: k,
                min_cut: bits(cut).collect(),
                cut_vertices,
            };
        }
    }
    unreachable!("a non-complete graph always has a separating set of size at most δ")
}

/// Smallest-first search for a `k`-subset `S` with `G − S` disconnected.
fn find_cut_of_size(g: &Graph, all: u64, k: usize) -> Option<u64> {
    let n = g.order();
    let mut found = None;
    for_each_subset(n, k, &mut |s| {
        let rest = all & !s;
        if !g.is_connected_within(rest) {
            found = Some(s);
            false
        } else {
            true
        }
    });
    found
}

/// Visits every `k`-subset of `0..n` in colex order until `visit` returns false.
fn for_each_subset(n: usize, k: usize, visit: &mut dyn FnMut(u64) -> bool) {
    if k > n {
        return;
    }
    if k == 0 {
        visit(0);
        return;
    }
    let mut s: u64 = (1u64 << k) - 1;
    let limit = 1u64 << n;
    while s < limit {
        if !visit(s) {
            return;
        }
        // Gosper's hack: next subset with the same popcount.
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
}

/// Vertices whose removal increases the number of connected components.
pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    let all = g.vertex_mask();
    let base = component_count(g, all);
    (0..g.order())
        .filter(|&v| component_count(g, all & !(1 << v)) > base)
        .collect()
}

pub fn component_count(g: &Graph, subset: u64) -> usize {
    let mut left = subset;
    let mut count = 0;
    while left != 0 {
        let v = left.trailing_zeros() as usize;
        left &= !g.component_within(v, subset);
        count += 1;
    }
    count
}

/// Connected, at least three vertices and no cut vertex.
pub fn is_two_connected(g: &Graph) -> bool {
    g.order() >= 3 && g.is_connected() && {
        let all = g.vertex_mask();
        (0..g.order()).all(|v| g.is_connected_within(all & !(1 << v)))
    }
}
