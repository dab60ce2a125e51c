//! Labeled graph enumeration.
//!
//! Graphs on `n` vertices are indexed by an edge mask whose bit `k` is the
//! `k`-th pair in graph6 order: `(0,1), (0,2), (1,2), (0,3), …`. Iteration
//! runs through masks in ascending order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity::is_two_connected;
use crate::graph::Graph;

/// Largest order accepted by [`labeled_graphs`].
pub const MAX_ENUMERATION_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    #[default]
    All,
    Connected,
    TwoConnected,
}

impl Filter {
    pub fn accepts(self, g: &Graph) -> bool {
        match self {
            Filter::All => true,
            Filter::Connected => g.is_connected(),
            Filter::TwoConnected => is_two_connected(g),
        }
    }
}

impl std::str::FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Filter::All),
            "connected" => Ok(Filter::Connected),
            "two_connected" => Ok(Filter::TwoConnected),
            other => Err(format!("unknown filter `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("labeled enumeration supports 1 <= n <= {MAX_ENUMERATION_ORDER}, got {0}")]
    TooLarge(usize),
}

/// The graph on `n` vertices whose edges are the set bits of `mask`.
pub fn graph_from_edge_mask(n: usize, mask: u64) -> Graph {
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> k & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Graph::from_rows_unchecked(rows)
}

/// Number of vertex pairs, `n(n-1)/2`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// All labeled graphs on `n` vertices that pass `filter`.
pub fn labeled_graphs(
    n: usize,
    filter: Filter,
) -> Result<impl Iterator<Item = Graph>, EnumerateError> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(EnumerateError::TooLarge(n));
    }
    let total = 1u64 << pair_count(n);
    Ok((0..total)
        .map(move |m| graph_from_edge_mask(n, m))
        .filter(move |g| filter.accepts(g)))
}
