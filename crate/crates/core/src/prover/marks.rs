use serde::{Deserialize, Serialize};

use crate::graph::{bits, Graph};
use crate::oracle::OrientedPath;

use super::ProverError;

/// How the neighbourhoods of the two path ends interleave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MarkLayout {
    /// `v_p ∈ N(v₁)`: the path closes into a cycle directly.
    TailHit,
    /// Every neighbour of `v₁` precedes (or equals) every neighbour of `v_p`.
    NonCrossing,
    /// Some neighbour of `v_p` precedes the last neighbour of `v₁`.
    Crossing,
}

/// Neighbours of the two ends of a longest path, located on the path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointMarks {
    /// `N(v₁)` in path order: `x₁ … x_t`.
    pub x: Vec<usize>,
    /// `N(v_p)` in reverse path order: `y₁ … y_f`.
    pub y: Vec<usize>,
    pub layout: MarkLayout,
}

impl EndpointMarks {
    pub fn x_last(&self) -> usize {
        *self
            .x
            .last()
            .expect("ends of a path with p >= 2 have a neighbour")
    }

    pub fn y_last(&self) -> usize {
        *self
            .y
            .last()
            .expect("ends of a path with p >= 2 have a neighbour")
    }
}

fn off_path_neighbor(g: &Graph, path: &OrientedPath, end: usize) -> Option<usize> {
    bits(g.neighbors(end) & !path.mask()).next()
}

/// Locates `N(v₁)` and `N(v_p)` on `path` and classifies their layout.
///
/// Also checks that every rotation `x⁻ ←P v₁ x →P v_p` (and the mirror
/// rotation at `v_p`) is again a path of order `p` whose new end has no
/// neighbour off the path.
pub fn endpoint_marks(g: &Graph, path: &OrientedPath) -> Result<EndpointMarks, ProverError> {
    let (v1, vp) = (path.first(), path.last());
    if path.order() < 2 {
        return Err(ProverError::ConstructionInvalid(
            "path of order < 2 has no marks".into(),
        ));
    }
    for end in [v1, vp] {
        if let Some(vertex) = off_path_neighbor(g, path, end) {
            return Err(ProverError::NotLongestPath { end, vertex });
        }
    }

    let mut x: Vec<usize> = bits(g.neighbors(v1)).collect();
    x.sort_by_key(|&v| path.position(v));
    let mut y: Vec<usize> = bits(g.neighbors(vp)).collect();
    y.sort_by_key(|&v| std::cmp::Reverse(path.position(v)));

    for &xi in &x {
        let rotated = path
            .rotate_at_front(xi)
            .expect("x_i lies on the path after v1");
        check_rotation(g, path, &rotated)?;
    }
    for &yi in &y {
        let rotated = path
            .rotate_at_back(yi)
            .expect("y_i lies on the path before v_p");
        check_rotation(g, path, &rotated)?;
    }

    let x_t = *x.last().expect("v1 has its path successor as a neighbour");
    let y_f = *y
        .last()
        .expect("v_p has its path predecessor as a neighbour");
    let layout = if x_t == vp {
        MarkLayout::TailHit
    } else if path.position(x_t) <= path.position(y_f) {
        MarkLayout::NonCrossing
    } else {
        MarkLayout::Crossing
    };
    Ok(EndpointMarks { x, y, layout })
}

fn check_rotation(
    g: &Graph,
    path: &OrientedPath,
    rotated: &OrientedPath,
) -> Result<(), ProverError> {
    rotated.validate(g).map_err(|e| {
        ProverError::ConstructionInvalid(format!(
            "rotation {:?} of {:?} is not a path: {e}",
            rotated.vertices(),
            path.vertices()
        ))
    })?;
    debug_assert_eq!(rotated.order(), path.order());
    let end = rotated.first();
    match off_path_neighbor(g, path, end) {
        Some(vertex) => Err(ProverError::NotLongestPath { end, vertex }),
        None => Ok(()),
    }
}

/// Which refinement of the endpoint floors applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RefinedFloor {
    /// `d(v_p) ≥ δ+1`: both ends have degree at least `d_{δ+1}`.
    HighEnd,
    /// `d(v₁) = d(v_p) = δ`: both ends have degree at least `d_{δ+1}`.
    BothMinimum,
    /// `d(v_p) = δ < d(v₁)`: `d(v₁) ≥ d_{δ+2}` and `d(v_p) ≥ d_δ`.
    HighStart,
}

/// Degree floors at the ends of an extremal longest path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeFloors {
    pub d_v1: usize,
    pub d_vp: usize,
    /// `d_{d(v₁)+1}`, a lower bound for `d(v₁)`.
    pub floor_v1: usize,
    /// `d_{d(v_p)}`, a lower bound for `d(v_p)`.
    pub floor_vp: usize,
    /// `d_δ + d_{δ+1} ≤ floor_v1 + floor_vp ≤ d(v₁) + d(v_p)`.
    pub sum_floor: usize,
    pub refined: RefinedFloor,
    /// Certified lower bound on `d(v₁) + d(v_p)`: `2d_{δ+1}` or
    /// `d_δ + d_{δ+2}` depending on `refined`.
    pub refined_sum_floor: usize,
}

fn violated(msg: String) -> ProverError {
    ProverError::InequalityViolated(msg)
}

/// `k`-th smallest degree must not exceed `bound`, given `witnesses`:
/// `k` distinct vertices each of degree at most `bound`.
fn counting_floor(
    g: &Graph,
    sorted: &[usize],
    witnesses: &[usize],
    bound: usize,
    what: &str,
) -> Result<usize, ProverError> {
    let mask = witnesses.iter().fold(0u64, |m, &v| m | 1 << v);
    if mask.count_ones() as usize != witnesses.len() {
        return Err(violated(format!(
            "{what}: witness vertices {witnesses:?} not distinct"
        )));
    }
    if let Some(&v) = witnesses.iter().find(|&&v| g.degree(v) > bound) {
        return Err(violated(format!(
            "{what}: d({v}) = {} > {bound}",
            g.degree(v)
        )));
    }
    let k = witnesses.len();
    let d_k = sorted[k - 1];
    if d_k > bound {
        return Err(violated(format!("{what}: d_{k} = {d_k} > {bound}")));
    }
    Ok(d_k)
}

/// Verifies the extremality inequalities at both ends and derives the
/// certified degree floors.
///
/// `d(v₁) ≥ d(x⁻)` for every `x ∈ N(v₁)` and `d(v₁) ≥ d(v_p)`; `d(v_p) ≥ d(y⁺)`
/// for every `y ∈ N(v_p)`. Counting the witnesses then gives
/// `d(v₁) ≥ d_{d(v₁)+1}` and `d(v_p) ≥ d_{d(v_p)}`.
pub fn degree_floor_inequalities(
    g: &Graph,
    path: &OrientedPath,
    marks: &EndpointMarks,
) -> Result<DegreeFloors, ProverError> {
    let ds = g.degree_sequence();
    let sorted = ds.as_slice();
    let delta = ds.min_degree();
    let (v1, vp) = (path.first(), path.last());
    let (d_v1, d_vp) = (g.degree(v1), g.degree(vp));

    let mut w1: Vec<usize> = marks
        .x
        .iter()
        .map(|&x| path.predecessor(x).expect("x_i is not v1"))
        .collect();
    w1.push(vp);
    if d_vp > d_v1 {
        return Err(violated(format!("d(v1) = {d_v1} < d(vp) = {d_vp}")));
    }
    let floor_v1 = counting_floor(g, sorted, &w1, d_v1, "start floor")?;

    let w2: Vec<usize> = marks
        .y
        .iter()
        .map(|&y| path.successor(y).expect("y_i is not v_p"))
        .collect();
    let floor_vp = counting_floor(g, sorted, &w2, d_vp, "end floor")?;

    let d = |k: usize| sorted[k - 1];
    let sum_floor = d(delta) + d(delta + 1);
    if floor_v1 < d(delta + 1) || floor_vp < d(delta) || floor_v1 + floor_vp < sum_floor {
        return Err(violated(format!(
            "floors {floor_v1} + {floor_vp} below d_delta + d_delta1 = {sum_floor}"
        )));
    }

    let (refined, refined_sum_floor) = if d_vp > delta {
        if d_vp < d(delta + 1) || d_v1 < d(delta + 1) {
            return Err(violated(format!(
                "high end: degrees below d_delta1 = {}",
                d(delta + 1)
            )));
        }
        (RefinedFloor::HighEnd, 2 * d(delta + 1))
    } else if d_v1 == delta {
        let mut w3 = w2.clone();
        w3.push(v1);
        let floor = counting_floor(g, sorted, &w3, d_vp, "minimum-degree ends")?;
        if floor < d(delta + 1) {
            return Err(violated("minimum-degree ends: floor below d_delta1".into()));
        }
        (RefinedFloor::BothMinimum, 2 * d(delta + 1))
    } else {
        if d_v1 < d(delta + 2) || d(d_v1 + 1) < d(delta + 2) {
            return Err(violated(format!("high start: d(v1) = {d_v1} < d_delta2")));
        }
        (RefinedFloor::HighStart, d(delta) + d(delta + 2))
    };
    if d_v1 + d_vp < refined_sum_floor {
        return Err(violated(format!(
            "d(v1) + d(vp) = {} below refined floor {refined_sum_floor}",
            d_v1 + d_vp
        )));
    }

    Ok(DegreeFloors {
        d_v1,
        d_vp,
        floor_v1,
        floor_vp,
        sum_floor,
        refined,
        refined_sum_floor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::PathBudget;
    use crate::prover::select_extremal_longest_path;

    #[test]
    fn five_cycle_tail_hit() {
        let g = Graph::cycle(5).unwrap();
        let p = OrientedPath::new(&g, vec![0, 1, 2, 3, 4]).unwrap();
        let marks = endpoint_marks(&g, &p).unwrap();
        assert_eq!(marks.layout, MarkLayout::TailHit);
        assert_eq!(marks.x, vec![1, 4]);
        assert_eq!(marks.y, vec![3, 0]);
        let floors = degree_floor_inequalities(&g, &p, &marks).unwrap();
        assert_eq!(floors.d_v1 + floors.d_vp, 4);
        assert_eq!(floors.sum_floor, 4);
    }

    #[test]
    fn complete_graph_tail_hit() {
        let g = Graph::complete(4).unwrap();
        let p = OrientedPath::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(endpoint_marks(&g, &p).unwrap().layout, MarkLayout::TailHit);
    }

    #[test]
    fn e2_floors() {
        let g = Graph::complete(2)
            .unwrap()
            .join(&Graph::empty(3).unwrap())
            .unwrap();
        let p = select_extremal_longest_path(&g, PathBudget::default()).unwrap();
        let marks = endpoint_marks(&g, &p).unwrap();
        assert_ne!(marks.layout, MarkLayout::TailHit);
        let floors = degree_floor_inequalities(&g, &p, &marks).unwrap();
        assert_eq!((floors.d_v1, floors.d_vp), (2, 2));
        assert_eq!(floors.refined, RefinedFloor::BothMinimum);
        assert_eq!(floors.sum_floor, 4);
        assert_eq!(floors.refined_sum_floor, 4);
    }

    #[test]
    fn non_longest_path_is_rejected() {
        let g = Graph::path(4).unwrap();
        let p = OrientedPath::new(&g, vec![1, 2, 3]).unwrap();
        assert_eq!(
            endpoint_marks(&g, &p),
            Err(ProverError::NotLongestPath { end: 1, vertex: 0 })
        );
    }

    #[test]
    fn non_extremal_path_violates_floor() {
        // Pendant-free graph where the lowest-degree start is not extremal:
        // a 4-cycle 0-1-2-3 with chord 0-2.
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let p = OrientedPath::new(&g, vec![1, 2, 0, 3]).unwrap();
        let marks = endpoint_marks(&g, &p).unwrap();
        assert!(matches!(
            degree_floor_inequalities(&g, &p, &marks),
            Err(ProverError::InequalityViolated(_))
        ));
    }
}
