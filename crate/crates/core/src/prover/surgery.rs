//! Turning an extremal longest path into a long cycle.

use serde::{Deserialize, Serialize};

use crate::graph::{bits, Graph};
use crate::oracle::{CycleWitness, OrientedPath};

use super::marks::{EndpointMarks, MarkLayout};
use super::vine::{longest_path_vine_claims, Vine};
use super::ProverError;

/// A structural fact checked while building a cycle. Required claims abort
/// the construction when false; the others are recorded only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub holds: bool,
    pub required: bool,
}

/// Intermediate state of the vine splice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VineSurgery {
    /// Neighbour of `v₁` replacing the first ear.
    pub z1_star: Option<usize>,
    /// Neighbour of `v_p` replacing the last ear.
    pub wm_star: Option<usize>,
    /// Path segments `(a, b)` whose inner vertices were dropped.
    pub removed_segments: Vec<(usize, usize)>,
    pub claims: Vec<ClaimCheck>,
}

fn invalid(msg: String) -> ProverError {
    ProverError::ConstructionInvalid(msg)
}

/// Walks a 2-regular edge set starting at `start`, going first towards
/// `towards`. Fails unless the edges form exactly one cycle through every
/// vertex in `expected`.
fn trace_cycle(
    g: &Graph,
    edges: &[(usize, usize)],
    expected: u64,
    start: usize,
    towards: usize,
) -> Result<CycleWitness, String> {
    let mut nbrs = vec![Vec::with_capacity(2); g.order()];
    for &(a, b) in edges {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    for v in bits(expected) {
        if nbrs[v].len() != 2 {
            return Err(format!("vertex {v} has {} cycle edges", nbrs[v].len()));
        }
    }
    let mut order = vec![start];
    let (mut prev, mut cur) = (start, towards);
    while cur != start {
        if order.len() > expected.count_ones() as usize {
            return Err("walk does not close".into());
        }
        order.push(cur);
        let next = if nbrs[cur][0] == prev {
            nbrs[cur][1]
        } else {
            nbrs[cur][0]
        };
        prev = cur;
        cur = next;
    }
    let seen = order.iter().fold(0u64, |m, &v| m | 1 << v);
    if seen != expected {
        return Err(format!(
            "edge set splits into several cycles; traced {order:?}"
        ));
    }
    CycleWitness::new(g, order).map_err(|e| e.to_string())
}

/// Splices a vine into the path.
///
/// With ears `L₁ … L_m`, `z₁*` is the first neighbour of `v₁` after `w₂` and
/// `w_m*` the last neighbour of `v_p` before `z_{m−1}`. The cycle uses the
/// path, the middle ears `L₂ … L_{m−1}` and the chords `v₁z₁*`, `v_pw_m*`,
/// minus the inner vertices of `w₂ … z₁*`, `w_i … z_{i−1}` (`3 ≤ i ≤ m−1`)
/// and `w_m* … z_{m−1}`.
///
/// `m = 1` closes the path along the single ear. For `m = 2`, `w₂*` is taken
/// as the last neighbour of `v_p` before `z₁*`, so only `w₂* … z₁*` is cut.
///
/// For a non-crossing layout the cycle has at least `d(v₁) + d(v_p) + 1`
/// vertices.
pub fn build_vine_cycle(
    g: &Graph,
    path: &OrientedPath,
    marks: &EndpointMarks,
    vine: &Vine,
) -> Result<(CycleWitness, VineSurgery), ProverError> {
    if marks.layout == MarkLayout::Crossing {
        return Err(invalid("vine splice needs a non-crossing layout".into()));
    }
    let m = vine.len();
    let p = path.order();
    let (v1, vp) = (path.first(), path.last());
    let pos = |v: usize| path.position(v).expect("vine ends lie on the path");

    let mut surgery = VineSurgery {
        z1_star: None,
        wm_star: None,
        removed_segments: Vec::new(),
        claims: Vec::new(),
    };
    if m == 0 {
        return Err(invalid("empty vine".into()));
    }
    if m == 1 {
        let mut vertices = path.vertices().to_vec();
        vertices.extend(vine.ears[0].interior().iter().rev());
        let cycle = CycleWitness::new(g, vertices).map_err(|e| invalid(e.to_string()))?;
        return Ok((cycle, surgery));
    }

    if let Err(e) = longest_path_vine_claims(vine) {
        return Err(invalid(e));
    }
    if marks.layout == MarkLayout::NonCrossing {
        surgery.claims = spacing_claims(path, marks, vine);
        if let Some(c) = surgery.claims.iter().find(|c| c.required && !c.holds) {
            return Err(invalid(format!(
                "claim `{}` fails for minimal vine {:?} on {:?}",
                c.claim,
                vine.ears,
                path.vertices()
            )));
        }
    }

    let w = |i: usize| pos(vine.ears[i - 1].w());
    let z = |i: usize| pos(vine.ears[i - 1].z());
    let nearest = |nbrs: u64, lo: usize, hi: usize, last: bool| {
        let c = bits(nbrs).map(pos).filter(|&q| lo < q && q < hi);
        if last {
            c.max()
        } else {
            c.min()
        }
    };

    let z1_star = nearest(g.neighbors(v1), w(2), p, false)
        .ok_or_else(|| invalid("no neighbour of v1 after w2".into()))?;
    let wm_star = if m == 2 {
        nearest(g.neighbors(vp), 0, z1_star, true)
    } else {
        nearest(g.neighbors(vp), 0, z(m - 1), true)
    }
    .ok_or_else(|| invalid("no neighbour of v_p before z_{m-1}".into()))?;
    surgery.z1_star = Some(path.at(z1_star));
    surgery.wm_star = Some(path.at(wm_star));

    let mut cuts: Vec<(usize, usize)> = Vec::new();
    if m == 2 {
        cuts.push((wm_star, z1_star));
    } else {
        cuts.push((w(2), z1_star));
        for i in 3..m {
            cuts.push((w(i), z(i - 1)));
        }
        cuts.push((wm_star, z(m - 1)));
    }
    for &(a, b) in &cuts {
        if a >= b {
            return Err(invalid(format!(
                "degenerate segment {a}..{b} on {:?}",
                path.vertices()
            )));
        }
    }
    for pair in cuts.windows(2) {
        if pair[0].1 > pair[1].0 {
            return Err(invalid(format!("overlapping segments {cuts:?}")));
        }
    }
    surgery.removed_segments = cuts
        .iter()
        .map(|&(a, b)| (path.at(a), path.at(b)))
        .collect();

    let inside = |k: usize| cuts.iter().any(|&(a, b)| a < k && k < b);
    let cut_edge = |k: usize| cuts.iter().any(|&(a, b)| a <= k && k < b);
    let mut edges: Vec<(usize, usize)> = (0..p - 1)
        .filter(|&k| !cut_edge(k))
        .map(|k| (path.at(k), path.at(k + 1)))
        .collect();
    let mut expected = (0..p)
        .filter(|&k| !inside(k))
        .fold(0u64, |m, k| m | 1 << path.at(k));
    for ear in &vine.ears[1..m - 1] {
        edges.extend(ear.vertices.windows(2).map(|e| (e[0], e[1])));
        expected |= ear.interior().iter().fold(0, |m, &v| m | 1 << v);
    }
    edges.push((v1, path.at(z1_star)));
    edges.push((vp, path.at(wm_star)));

    let cycle = trace_cycle(g, &edges, expected, v1, path.at(1)).map_err(|e| {
        invalid(format!(
            "{e}; path {:?}, vine {:?}, segments {cuts:?}",
            path.vertices(),
            vine.ears
        ))
    })?;

    if marks.layout == MarkLayout::NonCrossing {
        let need = g.degree(v1) + g.degree(vp) + 1;
        if cycle.order() < need {
            return Err(invalid(format!(
                "vine cycle {:?} has {} < d(v1) + d(vp) + 1 = {need} vertices",
                cycle.vertices(),
                cycle.order()
            )));
        }
    }
    Ok((cycle, surgery))
}

/// Position claims a minimal vine satisfies in the non-crossing layout.
fn spacing_claims(path: &OrientedPath, marks: &EndpointMarks, vine: &Vine) -> Vec<ClaimCheck> {
    let m = vine.len();
    let pos = |v: usize| path.position(v).expect("on path");
    let x_t = pos(marks.x_last());
    let y_f = pos(marks.y_last());
    let w = |i: usize| pos(vine.ears[i - 1].w());
    let z = |i: usize| pos(vine.ears[i - 1].z());
    let mut out = Vec::new();
    let mut push = |claim: &str, holds: bool, required: bool| {
        out.push(ClaimCheck {
            claim: claim.to_string(),
            holds,
            required,
        });
    };
    push("x_t < z_2", x_t < z(2), true);
    push("w_{m-1} < y_f", w(m - 1) < y_f, true);
    if m >= 3 {
        push("x_t <= w_3", x_t <= w(3), true);
        push("x_t < w_3", x_t < w(3), false);
        push("z_{m-2} <= y_f", z(m - 2) <= y_f, true);
        push("z_{m-2} < y_f", z(m - 2) < y_f, false);
    }
    out
}

/// Which crossing construction produced the cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingKind {
    /// `v ∈ N(v₁)` with `v⁻ ∈ N(v_p)`: cycle `v₁ v →P v_p v⁻ ←P v₁` of order `p`.
    Rotation { v: usize },
    /// Adjacent marks `y ≺ x` with `y ∈ N(v_p)`, `x ∈ N(v₁)` and no mark
    /// strictly between: cycle `v₁ x →P v_p y ←P v₁`.
    Gap { x: usize, y: usize },
}

/// Cycle for the crossing layout.
pub fn build_crossing_cycle(
    g: &Graph,
    path: &OrientedPath,
    marks: &EndpointMarks,
) -> Result<(CycleWitness, CrossingKind), ProverError> {
    if marks.layout != MarkLayout::Crossing {
        return Err(invalid(
            "crossing construction needs a crossing layout".into(),
        ));
    }
    let p = path.order();
    let (v1, vp) = (path.first(), path.last());
    let pos = |v: usize| path.position(v).expect("marks lie on the path");

    let close = |i: usize, j: usize| -> Result<CycleWitness, ProverError> {
        // v₁, then path[i..], then path[j] down to path[1].
        let mut vertices = vec![v1];
        vertices.extend_from_slice(&path.vertices()[i..]);
        vertices.extend(path.segment(j, 1));
        CycleWitness::new(g, vertices).map_err(|e| invalid(e.to_string()))
    };

    if let Some(&v) = marks
        .x
        .iter()
        .find(|&&x| pos(x) >= 2 && g.has_edge(vp, path.at(pos(x) - 1)))
    {
        let i = pos(v);
        let cycle = close(i, i - 1)?;
        if cycle.order() != p {
            return Err(invalid(format!(
                "rotation cycle has order {} != p",
                cycle.order()
            )));
        }
        return Ok((cycle, CrossingKind::Rotation { v }));
    }

    let y_f = pos(marks.y_last());
    let b = marks
        .x
        .iter()
        .map(|&x| pos(x))
        .find(|&q| q > y_f)
        .ok_or_else(|| invalid("no neighbour of v1 after y_f in crossing layout".into()))?;
    let a = marks
        .y
        .iter()
        .map(|&y| pos(y))
        .filter(|&q| q < b)
        .max()
        .expect("y_f precedes b");
    let between = |q: usize| a < q && q < b;
    if marks.x.iter().chain(&marks.y).any(|&v| between(pos(v))) {
        return Err(invalid(format!(
            "marks strictly between positions {a} and {b}"
        )));
    }
    let cycle = close(b, a)?;
    let need = g.degree(v1) + g.degree(vp);
    if cycle.order() < need {
        return Err(invalid(format!(
            "gap cycle {:?} has {} < d(v1) + d(vp) = {need} vertices",
            cycle.vertices(),
            cycle.order()
        )));
    }
    Ok((
        cycle,
        CrossingKind::Gap {
            x: path.at(b),
            y: path.at(a),
        },
    ))
}
