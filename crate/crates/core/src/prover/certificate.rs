use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conditions::{bound_target, condition_verdict, BoundTheorem, HamiltonCondition, Status};
use crate::connectivity::vertex_connectivity;
use crate::graph::Graph;
use crate::graph6::{emit_graph6, parse_graph6};
use crate::oracle::{CycleWitness, OrientedPath, PathBudget};

use super::extremal::select_extremal_longest_path;
use super::marks::{
    degree_floor_inequalities, endpoint_marks, DegreeFloors, EndpointMarks, MarkLayout,
};
use super::surgery::{
    build_crossing_cycle, build_vine_cycle, ClaimCheck, CrossingKind, VineSurgery,
};
use super::vine::{find_minimal_vine, Vine};
use super::ProverError;

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

/// Which construction closed the cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTrace {
    /// `v₁v_p` is an edge; the path itself closes.
    TailHit,
    /// Non-crossing marks; a minimal vine is spliced in.
    VineSurgery,
    /// Crossing marks with `v ∈ N(v₁)`, `v⁻ ∈ N(v_p)`.
    CrossingRotation,
    /// Crossing marks without such a pair; cut across the gap.
    CrossingGap,
}

/// A long cycle together with everything needed to re-check how it was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCertificate {
    pub schema_version: u32,
    pub graph6: String,
    pub n: usize,
    /// Order of a longest path.
    pub p: usize,
    pub path: OrientedPath,
    pub marks: EndpointMarks,
    pub case: CaseTrace,
    pub vine: Option<Vine>,
    pub surgery: Option<VineSurgery>,
    pub crossing: Option<CrossingKind>,
    pub floors: DegreeFloors,
    pub cycle: CycleWitness,
    /// `min{p, d_δ + d_{δ+1}}`.
    pub guaranteed_t1: usize,
    /// `min{p, 2d_{δ+1}, d_δ + d_{δ+2}}`, absent when `d_{δ+2}` is undefined.
    pub guaranteed_t3: Option<usize>,
    pub achieved: usize,
    pub claims: Vec<ClaimCheck>,
}

pub fn certified_long_cycle(g: &Graph) -> Result<CycleCertificate, ProverError> {
    certified_long_cycle_with_budget(g, PathBudget::default())
}

pub fn certified_long_cycle_with_budget(
    g: &Graph,
    budget: PathBudget,
) -> Result<CycleCertificate, ProverError> {
    let conn = vertex_connectivity(g);
    if g.order() < 3 || conn.kappa < 2 {
        let cut_vertex = conn
            .cut_vertices
            .first()
            .copied()
            .or(match conn.min_cut.as_slice() {
                [v] => Some(*v),
                _ => None,
            });
        return Err(ProverError::NotTwoConnected {
            kappa: conn.kappa,
            cut_vertex,
        });
    }

    let path = select_extremal_longest_path(g, budget)?;
    let p = path.order();
    let marks = endpoint_marks(g, &path)?;
    let floors = degree_floor_inequalities(g, &path, &marks)?;

    let (mut vine, mut surgery, mut crossing) = (None, None, None);
    let (case, cycle) = match marks.layout {
        MarkLayout::TailHit => {
            let cycle = CycleWitness::new(g, path.vertices().to_vec())
                .map_err(|e| ProverError::ConstructionInvalid(e.to_string()))?;
            (CaseTrace::TailHit, cycle)
        }
        MarkLayout::NonCrossing => {
            let v = find_minimal_vine(g, &path)?;
            let (cycle, s) = build_vine_cycle(g, &path, &marks, &v)?;
            vine = Some(v);
            surgery = Some(s);
            (CaseTrace::VineSurgery, cycle)
        }
        MarkLayout::Crossing => {
            let (cycle, kind) = build_crossing_cycle(g, &path, &marks)?;
            crossing = Some(kind);
            let case = match kind {
                CrossingKind::Rotation { .. } => CaseTrace::CrossingRotation,
                CrossingKind::Gap { .. } => CaseTrace::CrossingGap,
            };
            (case, cycle)
        }
    };

    let ds = g.degree_sequence();
    let guaranteed_t1 = bound_target(&ds, p, BoundTheorem::T1)
        .value
        .expect("d_δ and d_{δ+1} exist once δ ≥ 2");
    let guaranteed_t3 = bound_target(&ds, p, BoundTheorem::T3).value;
    let achieved = cycle.order();
    if achieved < guaranteed_t1 || guaranteed_t3.is_some_and(|t3| achieved < t3) {
        return Err(ProverError::ConstructionInvalid(format!(
            "{case:?} cycle of order {achieved} misses the guarantee \
             (t1 = {guaranteed_t1}, t3 = {guaranteed_t3:?}) on {}",
            emit_graph6(g)
        )));
    }

    let claims = surgery
        .as_ref()
        .map(|s| s.claims.clone())
        .unwrap_or_default();
    Ok(CycleCertificate {
        schema_version: CERTIFICATE_SCHEMA_VERSION,
        graph6: emit_graph6(g),
        n: g.order(),
        p,
        path,
        marks,
        case,
        vine,
        surgery,
        crossing,
        floors,
        cycle,
        guaranteed_t1,
        guaranteed_t3,
        achieved,
        claims,
    })
}

/// A spanning cycle obtained from a degree condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonProof {
    pub condition: HamiltonCondition,
    pub cycle: CycleWitness,
    pub certificate: CycleCertificate,
}

/// Builds a Hamilton cycle for a graph satisfying `T2` or `T4`.
///
/// Either condition forces 2-connectivity and a certified cycle of order
/// `min{p, n}`; a cycle of order `p < n` would extend to a path of order
/// `p + 1`. Both facts are checked and any failure is a `ProofGapViolated`.
pub fn hamilton_via_condition(g: &Graph) -> Result<HamiltonProof, ProverError> {
    let n = g.order();
    if n < 3 {
        return Err(ProverError::ConditionNotSatisfied);
    }
    let ds = g.degree_sequence();
    let condition = [HamiltonCondition::T2, HamiltonCondition::T4]
        .into_iter()
        .find(|&c| condition_verdict(&ds, c).status == Status::Holds)
        .ok_or(ProverError::ConditionNotSatisfied)?;
    let token = emit_graph6(g);

    let conn = vertex_connectivity(g);
    if conn.kappa < 2 {
        return Err(ProverError::ProofGapViolated(format!(
            "{condition:?} holds on {token} but κ = {} (cut {:?})",
            conn.kappa, conn.min_cut
        )));
    }
    let certificate = certified_long_cycle(g)?;
    if certificate.achieved == n {
        return Ok(HamiltonProof {
            condition,
            cycle: certificate.cycle.clone(),
            certificate,
        });
    }

    let c = &certificate.cycle;
    let mut detail = format!(
        "{condition:?} holds on {token} but the certified cycle has order {} < n = {n} (p = {})",
        certificate.achieved, certificate.p
    );
    if certificate.achieved >= certificate.p {
        if let Some(longer) = extend_off_cycle(g, c) {
            detail.push_str(&format!(
                "; path {:?} has order {}",
                longer.vertices(),
                longer.order()
            ));
        }
    }
    Err(ProverError::ProofGapViolated(detail))
}

/// `x⁺ →C x y` for a cycle vertex `x` with a neighbour `y` off the cycle.
fn extend_off_cycle(g: &Graph, c: &CycleWitness) -> Option<OrientedPath> {
    let vs = c.vertices();
    let off = g.vertex_mask() & !c.mask();
    let i = vs.iter().position(|&x| g.neighbors(x) & off != 0)?;
    let y = (g.neighbors(vs[i]) & off).trailing_zeros() as usize;
    let k = vs.len();
    let mut walk: Vec<usize> = (1..=k).map(|s| vs[(i + s) % k]).collect();
    walk.push(y);
    OrientedPath::new(g, walk).ok()
}

/// Summary of a successful certificate re-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub achieved: usize,
    pub guaranteed_t1: usize,
    pub guaranteed_t3: Option<usize>,
    pub case: CaseTrace,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("graph6 token does not decode: {0}")]
    Decode(String),
    #[error("{field}: {detail}")]
    Invalid { field: &'static str, detail: String },
}

fn bad(field: &'static str, detail: impl Into<String>) -> CertificateError {
    CertificateError::Invalid {
        field,
        detail: detail.into(),
    }
}

/// Re-checks a certificate from the graph6 token alone.
///
/// Uses nothing but adjacency queries: walks are re-traced, degrees
/// re-counted and guarantees re-derived here. Whether `p` really is the
/// longest-path order is not re-checked.
pub fn validate_certificate(cert: &CycleCertificate) -> Result<CertificateCheck, CertificateError> {
    if cert.schema_version != CERTIFICATE_SCHEMA_VERSION {
        return Err(CertificateError::Schema(cert.schema_version));
    }
    let g = parse_graph6(&cert.graph6).map_err(|e| CertificateError::Decode(e.to_string()))?;
    let n = g.order();
    if n != cert.n {
        return Err(bad(
            "n",
            format!("token has {n} vertices, certificate says {}", cert.n),
        ));
    }

    let path = cert.path.vertices();
    check_walk(&g, path, false).map_err(|d| bad("path", d))?;
    if path.len() != cert.p {
        return Err(bad(
            "p",
            format!("path has {} vertices, p = {}", path.len(), cert.p),
        ));
    }
    let cycle = cert.cycle.vertices();
    check_walk(&g, cycle, true).map_err(|d| bad("cycle", d))?;
    if cycle.len() != cert.achieved {
        return Err(bad(
            "achieved",
            format!("cycle has {} vertices", cycle.len()),
        ));
    }

    // Degrees and the indexed sequence, from scratch.
    let mut degrees: Vec<usize> = (0..n)
        .map(|v| (0..n).filter(|&u| g.has_edge(u, v)).count())
        .collect();
    degrees.sort_unstable();
    let delta = degrees[0];
    let d = |k: usize| (1..=n).contains(&k).then(|| degrees[k - 1]);
    let p = cert.p;
    let t1 = d(delta).zip(d(delta + 1)).map(|(a, b)| p.min(a + b));
    let t3 = match (d(delta), d(delta + 1), d(delta + 2)) {
        (Some(a), Some(b), Some(c)) => Some(p.min(2 * b).min(a + c)),
        _ => None,
    };
    if t1 != Some(cert.guaranteed_t1) {
        return Err(bad(
            "guaranteed_t1",
            format!("recomputed {t1:?}, stored {}", cert.guaranteed_t1),
        ));
    }
    if t3 != cert.guaranteed_t3 {
        return Err(bad(
            "guaranteed_t3",
            format!("recomputed {t3:?}, stored {:?}", cert.guaranteed_t3),
        ));
    }
    if cert.achieved < cert.guaranteed_t1 || t3.is_some_and(|t| cert.achieved < t) {
        return Err(bad(
            "achieved",
            format!("{} below a guarantee", cert.achieved),
        ));
    }

    // Marks: neighbours of the ends in path order.
    let (v1, vp) = (path[0], path[path.len() - 1]);
    let x: Vec<usize> = path
        .iter()
        .copied()
        .filter(|&u| g.has_edge(v1, u))
        .collect();
    let y: Vec<usize> = path
        .iter()
        .rev()
        .copied()
        .filter(|&u| g.has_edge(vp, u))
        .collect();
    if x != cert.marks.x || y != cert.marks.y {
        return Err(bad(
            "marks",
            "endpoint neighbour lists differ from the path",
        ));
    }
    let at = |v: usize| path.iter().position(|&u| u == v).expect("mark on path");
    let layout = if *x.last().unwrap() == vp {
        MarkLayout::TailHit
    } else if at(*x.last().unwrap()) <= at(*y.last().unwrap()) {
        MarkLayout::NonCrossing
    } else {
        MarkLayout::Crossing
    };
    if layout != cert.marks.layout {
        return Err(bad(
            "marks",
            format!("layout is {layout:?}, stored {:?}", cert.marks.layout),
        ));
    }
    let expected_case = match layout {
        MarkLayout::TailHit => matches!(cert.case, CaseTrace::TailHit),
        MarkLayout::NonCrossing => matches!(cert.case, CaseTrace::VineSurgery),
        MarkLayout::Crossing => {
            matches!(
                cert.case,
                CaseTrace::CrossingRotation | CaseTrace::CrossingGap
            )
        }
    };
    if !expected_case {
        return Err(bad(
            "case",
            format!("{:?} does not fit layout {layout:?}", cert.case),
        ));
    }

    match (&cert.vine, cert.case) {
        (Some(vine), CaseTrace::VineSurgery) => {
            let ears: Vec<&[usize]> = vine.ears.iter().map(|e| e.vertices.as_slice()).collect();
            check_ear_system(&g, path, &ears).map_err(|d| bad("vine", d))?;
        }
        (None, CaseTrace::VineSurgery) => return Err(bad("vine", "missing for vine surgery")),
        (Some(_), _) => return Err(bad("vine", "present outside vine surgery")),
        (None, _) => {}
    }
    if cert.case != CaseTrace::VineSurgery && cert.achieved < p {
        let need = if cert.case == CaseTrace::CrossingGap {
            x.len() + y.len()
        } else {
            p
        };
        if cert.achieved < need {
            return Err(bad("achieved", format!("{} < {need}", cert.achieved)));
        }
    }
    if cert.case == CaseTrace::VineSurgery && cert.achieved < x.len() + y.len() + 1 {
        return Err(bad("achieved", "vine cycle shorter than d(v1) + d(vp) + 1"));
    }

    Ok(CertificateCheck {
        achieved: cert.achieved,
        guaranteed_t1: cert.guaranteed_t1,
        guaranteed_t3: cert.guaranteed_t3,
        case: cert.case,
    })
}

fn check_walk(g: &Graph, vs: &[usize], closed: bool) -> Result<(), String> {
    let n = g.order();
    let min = if closed { 3 } else { 1 };
    if vs.len() < min {
        return Err(format!("{} vertices", vs.len()));
    }
    let mut seen = vec![false; n];
    for &v in vs {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(format!("vertex {v} out of range or repeated"));
        }
    }
    let mut steps: Vec<(usize, usize)> = vs.windows(2).map(|w| (w[0], w[1])).collect();
    if closed {
        steps.push((vs[vs.len() - 1], vs[0]));
    }
    match steps.into_iter().find(|&(a, b)| !g.has_edge(a, b)) {
        Some((a, b)) => Err(format!("{a}-{b} is not an edge")),
        None => Ok(()),
    }
}

/// The ear-system conditions, checked position by position.
fn check_ear_system(g: &Graph, path: &[usize], ears: &[&[usize]]) -> Result<(), String> {
    let n = g.order();
    let m = ears.len();
    let on_path = |v: usize| path.contains(&v);
    let at = |v: usize| path.iter().position(|&u| u == v);
    let mut used = vec![false; n];
    for (i, ear) in ears.iter().enumerate() {
        check_walk(g, ear, false).map_err(|e| format!("ear {}: {e}", i + 1))?;
        if ear.len() < 2 {
            return Err(format!("ear {} has one vertex", i + 1));
        }
        let (w, z) = (ear[0], ear[ear.len() - 1]);
        if !on_path(w) || !on_path(z) {
            return Err(format!("ear {} does not end on the path", i + 1));
        }
        for &v in &ear[1..ear.len() - 1] {
            if on_path(v) || std::mem::replace(&mut used[v], true) {
                return Err(format!(
                    "ear {} re-enters the path or another ear at {v}",
                    i + 1
                ));
            }
        }
        if ear.len() == 2 && at(w).unwrap().abs_diff(at(z).unwrap()) == 1 {
            return Err(format!("ear {} is a path edge", i + 1));
        }
    }
    let w = |i: usize| at(ears[i - 1][0]).unwrap();
    let z = |i: usize| at(ears[i - 1][ears[i - 1].len() - 1]).unwrap();
    if m == 0 || w(1) != 0 || z(m) != path.len() - 1 {
        return Err("ears must start at v1 and end at vp".into());
    }
    for i in 1..m {
        if !(w(i) < w(i + 1) && w(i + 1) < z(i) && z(i) < z(i + 1)) {
            return Err(format!("ears {i} and {} are out of order", i + 1));
        }
        if i + 2 <= m && z(i) > w(i + 2) {
            return Err(format!("ear {i} overlaps ear {}", i + 2));
        }
    }
    Ok(())
}
