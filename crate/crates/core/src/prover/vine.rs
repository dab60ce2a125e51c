//! Vines: ear systems hanging off a path.
//!
//! A vine of length `m` on `P = v₁ … v_p` is a list of ears
//! `L_i = w_i … z_i` such that
//!
//! * each ear meets `P` exactly in `{w_i, z_i}` and distinct ears share no
//!   inner vertices;
//! * `v₁ = w₁ ≺ w₂ ≺ z₁ ⪯ w₃ ≺ z₂ ⪯ w₄ ≺ … ⪯ w_m ≺ z_{m−1} ≺ z_m = v_p`.
//!
//! In a 2-connected graph every path carries a vine.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::graph::{bits, Graph};
use crate::oracle::OrientedPath;

use super::ProverError;

/// A path from `w` to `z` whose inner vertices avoid the host path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ear {
    /// `w … z`, at least two vertices.
    pub vertices: Vec<usize>,
}

impl Ear {
    pub fn w(&self) -> usize {
        self.vertices[0]
    }

    pub fn z(&self) -> usize {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn is_edge(&self) -> bool {
        self.vertices.len() == 2
    }

    pub fn interior(&self) -> &[usize] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    fn interior_mask(&self) -> u64 {
        self.interior().iter().fold(0, |m, &v| m | 1 << v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vine {
    pub ears: Vec<Ear>,
}

impl Vine {
    pub fn len(&self) -> usize {
        self.ears.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ears.is_empty()
    }
}

/// Candidate ear with endpoints at path positions `w < z`.
struct Candidate {
    w: usize,
    z: usize,
    interior: u64,
    vertices: Vec<usize>,
}

/// All ears of `path`, ordered by `(w, z)` position then length.
fn candidate_ears(g: &Graph, path: &OrientedPath) -> Vec<Candidate> {
    let on_path = path.mask();
    let off_path = g.vertex_mask() & !on_path;
    let p = path.order();
    let mut out = Vec::new();
    for a in 0..p {
        let w = path.at(a);
        for b in a + 2..p {
            if g.has_edge(w, path.at(b)) {
                out.push(Candidate {
                    w: a,
                    z: b,
                    interior: 0,
                    vertices: vec![w, path.at(b)],
                });
            }
        }
        let mut stack = vec![w];
        for u in bits(g.neighbors(w) & off_path) {
            stack.push(u);
            detours(g, path, off_path, a, 1 << u, &mut stack, &mut out);
            stack.pop();
        }
    }
    out.sort_by_key(|e| (e.w, e.z, e.vertices.len()));
    out
}

fn detours(
    g: &Graph,
    path: &OrientedPath,
    off_path: u64,
    a: usize,
    used: u64,
    stack: &mut Vec<usize>,
    out: &mut Vec<Candidate>,
) {
    let end = *stack.last().expect("stack holds w");
    for z in bits(g.neighbors(end) & path.mask()) {
        let b = path.position(z).expect("on path");
        if b > a {
            let mut vertices = stack.clone();
            vertices.push(z);
            out.push(Candidate {
                w: a,
                z: b,
                interior: used,
                vertices,
            });
        }
    }
    for u in bits(g.neighbors(end) & off_path & !used) {
        stack.push(u);
        detours(g, path, off_path, a, used | 1 << u, stack, out);
        stack.pop();
    }
}

/// A vine on `path` with the fewest possible ears.
///
/// Breadth-first search over partial vines, where a partial vine is summed
/// up by the position bounding the next ear's start, the position of the
/// last ear's end and the off-path vertices already used.
pub fn find_minimal_vine(g: &Graph, path: &OrientedPath) -> Result<Vine, ProverError> {
    let p = path.order();
    if p < 2 {
        return Err(ProverError::NoVineFound);
    }
    let last = p - 1;
    let ears = candidate_ears(g, path);

    // (lo, z, used, parent node, ear index)
    struct Node {
        lo: usize,
        z: usize,
        used: u64,
        parent: Option<usize>,
        ear: usize,
    }
    let mut nodes: Vec<Node> = Vec::new();
    let mut seen: HashSet<(usize, usize, u64)> = HashSet::new();
    let mut frontier = Vec::new();
    let mut found = None;

    for (i, e) in ears.iter().enumerate().filter(|(_, e)| e.w == 0) {
        nodes.push(Node {
            lo: 1,
            z: e.z,
            used: e.interior,
            parent: None,
            ear: i,
        });
        if e.z == last {
            found = Some(nodes.len() - 1);
            break;
        }
        if seen.insert((1, e.z, e.interior)) {
            frontier.push(nodes.len() - 1);
        }
    }

    while found.is_none() && !frontier.is_empty() {
        let mut next = Vec::new();
        'level: for &node in &frontier {
            let (lo, z, used) = (nodes[node].lo, nodes[node].z, nodes[node].used);
            for (i, e) in ears.iter().enumerate() {
                if e.w < lo || e.w >= z || e.z <= z || e.interior & used != 0 {
                    continue;
                }
                let state = (z, e.z, used | e.interior);
                if e.z != last && !seen.insert(state) {
                    continue;
                }
                nodes.push(Node {
                    lo: z,
                    z: e.z,
                    used: state.2,
                    parent: Some(node),
                    ear: i,
                });
                if e.z == last {
                    found = Some(nodes.len() - 1);
                    break 'level;
                }
                next.push(nodes.len() - 1);
            }
        }
        frontier = next;
    }

    let mut cursor = found.ok_or(ProverError::NoVineFound)?;
    let mut chain = Vec::new();
    loop {
        chain.push(Ear {
            vertices: ears[nodes[cursor].ear].vertices.clone(),
        });
        match nodes[cursor].parent {
            Some(parent) => cursor = parent,
            None => break,
        }
    }
    chain.reverse();
    let vine = Vine { ears: chain };
    check_vine(g, path, &vine).map_err(ProverError::VineInvalid)?;
    Ok(vine)
}

/// Checks both defining conditions of a vine on `path`, verbatim.
pub fn check_vine(g: &Graph, path: &OrientedPath, vine: &Vine) -> Result<(), String> {
    let m = vine.len();
    if m == 0 {
        return Err("vine has no ears".into());
    }
    let mut inner_used = 0u64;
    for (i, ear) in vine.ears.iter().enumerate() {
        let ear_no = i + 1;
        if ear.vertices.len() < 2 {
            return Err(format!("ear {ear_no} has fewer than two vertices"));
        }
        OrientedPath::new(g, ear.vertices.clone())
            .map_err(|e| format!("ear {ear_no} is not a path: {e}"))?;
        if !path.contains(ear.w()) || !path.contains(ear.z()) {
            return Err(format!("ear {ear_no} does not end on the path"));
        }
        if ear.interior().iter().any(|&v| path.contains(v)) {
            return Err(format!("ear {ear_no} meets the path in an inner vertex"));
        }
        let (a, b) = (
            path.position(ear.w()).unwrap(),
            path.position(ear.z()).unwrap(),
        );
        if ear.is_edge() && a.abs_diff(b) == 1 {
            return Err(format!("ear {ear_no} is an edge of the path"));
        }
        let inner = ear.interior_mask();
        if inner & inner_used != 0 {
            return Err(format!(
                "ear {ear_no} shares inner vertices with an earlier ear"
            ));
        }
        inner_used |= inner;
    }

    let pos = |v: usize| path.position(v).expect("checked above");
    let w: Vec<usize> = vine.ears.iter().map(|e| pos(e.w())).collect();
    let z: Vec<usize> = vine.ears.iter().map(|e| pos(e.z())).collect();
    if w[0] != 0 {
        return Err("first ear does not start at v1".into());
    }
    if z[m - 1] != path.order() - 1 {
        return Err("last ear does not end at v_p".into());
    }
    // w_{i+1} ≺ z_i and z_i ⪯ w_{i+2}, plus w₁ ≺ w₂ and z_{m−1} ≺ z_m.
    for i in 0..m {
        if w[i] >= z[i] {
            return Err(format!("ear {} runs backwards", i + 1));
        }
        if i + 1 < m {
            if w[i] >= w[i + 1] {
                return Err(format!("w_{} does not precede w_{}", i + 1, i + 2));
            }
            if w[i + 1] >= z[i] {
                return Err(format!("w_{} does not precede z_{}", i + 2, i + 1));
            }
            if z[i] >= z[i + 1] {
                return Err(format!("z_{} does not precede z_{}", i + 1, i + 2));
            }
        }
        if i + 2 < m && z[i] > w[i + 2] {
            return Err(format!("z_{} is after w_{}", i + 1, i + 3));
        }
    }
    Ok(())
}

/// On a longest path the first and last ears of a minimal vine are single
/// edges (the ends have no neighbours off the path).
pub fn longest_path_vine_claims(vine: &Vine) -> Result<(), String> {
    let first = &vine.ears[0];
    let last = &vine.ears[vine.len() - 1];
    if !first.is_edge() {
        return Err(format!("first ear {:?} is not an edge", first.vertices));
    }
    if !last.is_edge() {
        return Err(format!("last ear {:?} is not an edge", last.vertices));
    }
    Ok(())
}
