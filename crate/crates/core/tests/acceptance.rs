//! Acceptance gate. Each test prints one `PASS`/`FAIL` line.
//!
//! The exhaustive criteria share a single sweep over every labeled graph on
//! 3 to 7 vertices (2,131,016 graphs, 1,026,505 of them 2-connected).

use std::collections::BTreeMap;
use std::sync::OnceLock;

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use circumlab::conditions::{condition_verdict, HamiltonCondition, Status};
use circumlab::connectivity::{is_two_connected, vertex_connectivity};
use circumlab::enumerate::{graph_from_edge_mask, pair_count};
use circumlab::families::{audit_family, Disposition, FamilyKind, FamilySpec, SharpnessReport};
use circumlab::graph::Graph;
use circumlab::graph6::{emit_graph6, parse_graph6};
use circumlab::oracle::{circumference, is_hamiltonian, longest_path, OrientedPath};
use circumlab::prover::{
    certified_long_cycle, find_minimal_vine, hamilton_via_condition, validate_certificate,
    CaseTrace, CycleCertificate,
};

const MAX_N: usize = 7;
/// Labeled 2-connected graphs on n vertices, n = 0..=7.
const TWO_CONNECTED_COUNTS: [u64; 8] = [0, 0, 0, 1, 10, 238, 11368, 1014888];
/// Keep at most this many example violations per criterion.
const KEEP: usize = 5;

/// Writes straight to stdout so the line survives libtest output capture.
fn report(criterion: &str, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    writeln!(out, "{verdict} {criterion}: {detail}").unwrap();
    out.flush().unwrap();
}

#[derive(Default)]
struct Violations {
    count: u64,
    examples: Vec<String>,
}

impl Violations {
    fn add(&mut self, what: String) {
        self.count += 1;
        if self.examples.len() < KEEP {
            self.examples.push(what);
        }
    }

    fn summary(&self) -> String {
        format!("{} violations {:?}", self.count, self.examples)
    }
}

#[derive(Default)]
struct Sweep {
    graphs: u64,
    two_connected: u64,
    condition_graphs: u64,
    hamilton: Violations,
    bounds: Violations,
    kappa: Violations,
    c_le_p: Violations,
    codec: Violations,
    vine: Violations,
    vines_checked: u64,
    cases: BTreeMap<String, u64>,
    soft_claims_false: BTreeMap<String, u64>,
}

/// Closed walk check written against adjacency only.
fn is_cycle_in(g: &Graph, vs: &[usize]) -> bool {
    let n = g.order();
    let mut seen = vec![false; n];
    vs.len() >= 3
        && vs
            .iter()
            .all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
        && (0..vs.len()).all(|i| g.has_edge(vs[i], vs[(i + 1) % vs.len()]))
}

fn is_path_in(g: &Graph, vs: &[usize]) -> bool {
    let n = g.order();
    let mut seen = vec![false; n];
    !vs.is_empty()
        && vs
            .iter()
            .all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
        && vs.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// graph6 body packed straight from the edge mask, most significant first.
fn token_from_mask(n: usize, mask: u64) -> String {
    let bits = pair_count(n);
    let mut out = vec![(n + 63) as u8];
    for chunk in 0..bits.div_ceil(6) {
        let mut v = 0u8;
        for b in 0..6 {
            let k = chunk * 6 + b;
            v = v << 1 | (k < bits && mask >> k & 1 == 1) as u8;
        }
        out.push(v + 63);
    }
    String::from_utf8(out).unwrap()
}

/// Every ear on `path`, oriented from the earlier end to the later one.
fn all_ears(g: &Graph, path: &[usize]) -> Vec<Vec<usize>> {
    let n = g.order();
    let pos: Vec<Option<usize>> = (0..n).map(|v| path.iter().position(|&u| u == v)).collect();
    let mut ears = Vec::new();
    fn walk(g: &Graph, pos: &[Option<usize>], cur: &mut Vec<usize>, ears: &mut Vec<Vec<usize>>) {
        let last = *cur.last().unwrap();
        for u in 0..g.order() {
            if !g.has_edge(last, u) || cur.contains(&u) {
                continue;
            }
            match pos[u] {
                Some(b) => {
                    let a = pos[cur[0]].unwrap();
                    let is_path_edge = cur.len() == 1 && a.abs_diff(b) == 1;
                    if a < b && !is_path_edge {
                        let mut e = cur.clone();
                        e.push(u);
                        ears.push(e);
                    }
                }
                None => {
                    cur.push(u);
                    walk(g, pos, cur, ears);
                    cur.pop();
                }
            }
        }
    }
    for &a in path {
        walk(g, &pos, &mut vec![a], &mut ears);
    }
    ears
}

/// The ear-system conditions, read straight off the definition.
fn vine_conditions_hold(g: &Graph, path: &[usize], ears: &[Vec<usize>]) -> Result<(), String> {
    let at = |v: usize| path.iter().position(|&u| u == v);
    let mut inner_used = 0u64;
    for (i, e) in ears.iter().enumerate() {
        if e.len() < 2 || !is_path_in(g, e) {
            return Err(format!("ear {i} is not a path"));
        }
        let (w, z) = (e[0], e[e.len() - 1]);
        let (Some(a), Some(b)) = (at(w), at(z)) else {
            return Err(format!("ear {i} does not end on P"));
        };
        if e.len() == 2 && a.abs_diff(b) == 1 {
            return Err(format!("ear {i} is an edge of P"));
        }
        for &v in &e[1..e.len() - 1] {
            if at(v).is_some() || inner_used >> v & 1 == 1 {
                return Err(format!("ear {i} meets P or another ear at {v}"));
            }
            inner_used |= 1 << v;
        }
    }
    let w: Vec<usize> = ears.iter().map(|e| at(e[0]).unwrap()).collect();
    let z: Vec<usize> = ears.iter().map(|e| at(e[e.len() - 1]).unwrap()).collect();
    let m = ears.len();
    if m == 0 || w[0] != 0 || z[m - 1] != path.len() - 1 {
        return Err("vine does not run from v1 to vp".into());
    }
    for i in 0..m - 1 {
        if !(w[i] < w[i + 1] && w[i + 1] < z[i] && z[i] < z[i + 1]) {
            return Err(format!("order broken between ears {i} and {}", i + 1));
        }
        if i + 2 < m && z[i] > w[i + 2] {
            return Err(format!("ear {i} ends after ear {} starts", i + 2));
        }
    }
    Ok(())
}

/// Depth-first search for a vine with at most `limit` ears.
fn vine_with_at_most(path_len: usize, ears: &[(usize, usize, u64)], limit: usize) -> bool {
    fn extend(
        ears: &[(usize, usize, u64)],
        chain: &mut Vec<usize>,
        used: u64,
        limit: usize,
        last: usize,
    ) -> bool {
        let k = chain.len();
        let (pw, pz, _) = ears[chain[k - 1]];
        if pz == last {
            return true;
        }
        if k == limit {
            return false;
        }
        for (j, &(w, z, inner)) in ears.iter().enumerate() {
            let fits_prev = pw < w && w < pz && pz < z;
            let fits_prev2 = k < 2 || ears[chain[k - 2]].1 <= w;
            if fits_prev && fits_prev2 && inner & used == 0 {
                chain.push(j);
                if extend(ears, chain, used | inner, limit, last) {
                    return true;
                }
                chain.pop();
            }
        }
        false
    }
    if limit == 0 {
        return false;
    }
    ears.iter()
        .enumerate()
        .filter(|(_, e)| e.0 == 0)
        .any(|(j, &(_, _, inner))| extend(ears, &mut vec![j], inner, limit, path_len - 1))
}

fn check_vine(g: &Graph, cert: &CycleCertificate, out: &mut Violations) {
    let token = &cert.graph6;
    let path = cert.path.vertices();
    let vine = match find_minimal_vine(g, &cert.path) {
        Ok(v) => v,
        Err(e) => return out.add(format!("{token}: {e}")),
    };
    let ears: Vec<Vec<usize>> = vine.ears.iter().map(|e| e.vertices.clone()).collect();
    if let Err(e) = vine_conditions_hold(g, path, &ears) {
        return out.add(format!("{token}: {e} in {ears:?}"));
    }
    let m = ears.len();
    if ears[0].len() != 2 || ears[m - 1].len() != 2 {
        return out.add(format!("{token}: end ears are not single edges: {ears:?}"));
    }
    let at = |v: usize| path.iter().position(|&u| u == v).unwrap();
    let candidates: Vec<(usize, usize, u64)> = all_ears(g, path)
        .iter()
        .map(|e| {
            let inner = e[1..e.len() - 1].iter().fold(0u64, |s, &v| s | 1 << v);
            (at(e[0]), at(e[e.len() - 1]), inner)
        })
        .collect();
    if vine_with_at_most(path.len(), &candidates, m - 1) {
        out.add(format!("{token}: a vine with fewer than {m} ears exists"));
    }
}

fn sweep() -> &'static Sweep {
    static SWEEP: OnceLock<Sweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let mut s = Sweep::default();
        for n in 3..=MAX_N {
            for mask in 0..1u64 << pair_count(n) {
                let g = graph_from_edge_mask(n, mask);
                visit(&mut s, &g, mask);
            }
        }
        s
    })
}

fn visit(s: &mut Sweep, g: &Graph, mask: u64) {
    let n = g.order();
    s.graphs += 1;
    let token = emit_graph6(g);
    if token != token_from_mask(n, mask) || parse_graph6(&token).as_ref() != Ok(g) {
        s.codec.add(token.clone());
    }

    let p = longest_path(g).map_or(0, |lp| lp.order);
    let c = circumference(g).order();
    if c > p {
        s.c_le_p.add(format!("{token}: c = {c} > p = {p}"));
    }

    let ds = g.degree_sequence();
    let holds = [HamiltonCondition::T2, HamiltonCondition::T4]
        .into_iter()
        .any(|cond| condition_verdict(&ds, cond).status == Status::Holds);
    let two_connected = is_two_connected(g);
    if holds {
        s.condition_graphs += 1;
        let kappa = vertex_connectivity(g).kappa;
        if kappa < 2 {
            s.kappa.add(format!("{token}: κ = {kappa}"));
        }
        if !is_hamiltonian(g) {
            s.hamilton
                .add(format!("{token}: oracle finds no Hamilton cycle"));
        }
        match hamilton_via_condition(g) {
            Ok(proof) if proof.cycle.order() == n && is_cycle_in(g, proof.cycle.vertices()) => {}
            Ok(proof) => s
                .hamilton
                .add(format!("{token}: bad cycle {:?}", proof.cycle)),
            Err(e) => s.hamilton.add(format!("{token}: {e}")),
        }
    }

    if !two_connected {
        return;
    }
    s.two_connected += 1;
    let cert = match certified_long_cycle(g) {
        Ok(cert) => cert,
        Err(e) => return s.bounds.add(format!("{token}: {e}")),
    };
    *s.cases.entry(format!("{:?}", cert.case)).or_default() += 1;
    for claim in cert.claims.iter().filter(|c| !c.holds) {
        *s.soft_claims_false.entry(claim.claim.clone()).or_default() += 1;
    }

    // Guarantees recomputed from the sorted degrees here.
    let d = ds.as_slice();
    let delta = d[0];
    let dk = |k: usize| (1..=n).contains(&k).then(|| d[k - 1]);
    let t1 = p.min(dk(delta).unwrap() + dk(delta + 1).unwrap());
    let t3 = dk(delta + 2).map(|d2| {
        p.min(2 * dk(delta + 1).unwrap())
            .min(dk(delta).unwrap() + d2)
    });
    let achieved = cert.cycle.order();
    let valid = is_cycle_in(g, cert.cycle.vertices()) && achieved == cert.achieved;
    if !valid
        || cert.p != p
        || achieved < t1
        || t3.is_some_and(|t| achieved < t)
        || achieved > c
        || validate_certificate(&cert).is_err()
    {
        s.bounds.add(format!(
            "{token}: achieved {achieved}, t1 {t1}, t3 {t3:?}, c {c}, p {p}, valid {valid}"
        ));
    }

    s.vines_checked += 1;
    check_vine(g, &cert, &mut s.vine);
}

#[test]
fn criterion_1_extremal_family_values() {
    let started = std::time::Instant::now();
    let mut bad = Vec::new();
    for delta in 2..=5 {
        for kind in FamilyKind::ALL {
            let r = audit_family(FamilySpec { kind, delta }).unwrap();
            let d = |k: Option<usize>| k.unwrap();
            let ok = match kind {
                FamilyKind::E1 => {
                    (r.n, r.c, r.p) == (2 * delta + 2, 2 * delta + 1, 2 * delta + 2)
                        && d(r.degrees.d_delta1) == delta + 1
                        && d(r.degrees.d_delta3) == 2 * delta + 1
                }
                FamilyKind::E2 => {
                    (r.n, r.c, r.p) == (2 * delta + 1, 2 * delta, 2 * delta + 1)
                        && r.kappa >= 2
                        && d(r.degrees.d_delta) == delta
                        && d(r.degrees.d_delta1) == delta
                        && d(r.degrees.d_delta2) == 2 * delta
                }
                FamilyKind::E3 => (r.c, r.p, r.kappa) == (delta + 1, 2 * delta + 1, 1),
            };
            if !ok || !r.passed() {
                bad.push(format!(
                    "{kind} δ={delta}: n={} c={} p={} κ={}",
                    r.n, r.c, r.p, r.kappa
                ));
            }
        }
    }
    let secs = started.elapsed().as_secs_f64();
    let ok = bad.is_empty() && secs < 10.0;
    report(
        "criterion 1 (extremal family values, δ = 2..5)",
        ok,
        &format!("{bad:?} in {secs:.2}s"),
    );
    assert!(ok);
}

#[test]
fn criterion_2_hamiltonicity_conditions_exhaustive() {
    let s = sweep();
    let ok = s.hamilton.count == 0 && s.condition_graphs > 0;
    report(
        "criterion 2 (T2/T4 imply a spanning cycle, all graphs 3 <= n <= 7)",
        ok,
        &format!(
            "{} of {} graphs satisfy a condition; {}",
            s.condition_graphs,
            s.graphs,
            s.hamilton.summary()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_3_certified_bounds_exhaustive() {
    let s = sweep();
    let expected: u64 = TWO_CONNECTED_COUNTS[3..=MAX_N].iter().sum();
    let ok = s.bounds.count == 0 && s.two_connected == expected;
    report(
        "criterion 3 (certified cycle meets both targets and c, 2-connected n <= 7)",
        ok,
        &format!(
            "{} 2-connected graphs, cases {:?}; {}",
            s.two_connected,
            s.cases,
            s.bounds.summary()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_4_conditions_force_two_connectivity() {
    let s = sweep();
    let ok = s.kappa.count == 0;
    report(
        "criterion 4 (T2/T4 imply κ >= 2, all graphs 3 <= n <= 7)",
        ok,
        &format!(
            "{} graphs checked; {}",
            s.condition_graphs,
            s.kappa.summary()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_5_sharpness_at_two() {
    let reports: Vec<SharpnessReport> = FamilyKind::ALL
        .into_iter()
        .map(|kind| audit_family(FamilySpec { kind, delta: 2 }).unwrap())
        .collect();
    let expect = [
        (FamilyKind::E1, "c < min{p, 2d_{δ+1}}", "5 < min{6, 6} = 6"),
        (
            FamilyKind::E1,
            "c < min{p, 2d_{δ+1}, d_{δ+1}+d_{δ+2}}",
            "5 < min{6, 6, 6} = 6",
        ),
        (
            FamilyKind::E1,
            "c < min{p, 2d_{δ+1}, d_δ+d_{δ+3}}",
            "5 < min{6, 6, 7} = 6",
        ),
        (
            FamilyKind::E2,
            "c < min{p, d_δ+d_{δ+2}}",
            "4 < min{5, 6} = 5",
        ),
        (
            FamilyKind::E2,
            "c < min{p, d_δ+d_{δ+1}+1}",
            "4 < min{5, 5} = 5",
        ),
        (
            FamilyKind::E2,
            "c < min{p, 2d_{δ+1}+1, d_δ+d_{δ+2}}",
            "4 < min{5, 5, 6} = 5",
        ),
        (
            FamilyKind::E2,
            "c < min{p, 2d_{δ+2}, d_δ+d_{δ+2}}",
            "4 < min{5, 8, 6} = 5",
        ),
        (
            FamilyKind::E3,
            "c < min{p, d_δ+d_{δ+1}}",
            "3 < min{5, 4} = 4",
        ),
        (
            FamilyKind::E3,
            "c < min{p, 2d_{δ+1}, d_δ+d_{δ+2}}",
            "3 < min{5, 4, 4} = 4",
        ),
    ];
    let mut bad = Vec::new();
    for (kind, claim, computed) in expect {
        let r = reports.iter().find(|r| r.family == kind).unwrap();
        match r.check(claim) {
            Some(c) if c.disposition == Disposition::Pass && c.computed == computed => {}
            other => bad.push(format!("{kind} {claim}: {other:?}")),
        }
    }
    let e3 = reports.iter().find(|r| r.family == FamilyKind::E3).unwrap();
    if e3.kappa != 1 {
        bad.push(format!("E3 κ = {}", e3.kappa));
    }
    let e1 = reports.iter().find(|r| r.family == FamilyKind::E1).unwrap();
    let relaxed = e1.check("min{2d_{δ+1}, d_δ+d_{δ+2}} >= n");
    match relaxed {
        Some(c)
            if c.disposition == Disposition::Recorded && c.computed.contains("min{6, 5} = 5") => {}
        other => bad.push(format!("E1 relaxed T4 entry: {other:?}")),
    }
    let ok = bad.is_empty();
    report(
        "criterion 5 (strict inequalities at δ = 2; E1 min{2d_{δ+1}, d_δ+d_{δ+2}} recorded)",
        ok,
        &format!("{bad:?}; E1 entry: {:?}", relaxed.map(|c| &c.computed)),
    );
    assert!(ok);
}

#[test]
fn criterion_6_oracle_self_consistency() {
    let s = sweep();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c1c1e);
    let (mut runs, mut rotations) = (0u64, 0u64);
    let mut rot = Violations::default();
    let mut c_le_p = Violations::default();
    while runs < 10_000 {
        let n = rng.gen_range(5..=10);
        let density = rng.gen_range(0.3..0.8);
        let mut edges = Vec::new();
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(density) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::new(n, &edges).unwrap();
        let (p, c) = (longest_path(&g).unwrap().order, circumference(&g).order());
        if c > p {
            c_le_p.add(format!("{}: c = {c} > p = {p}", emit_graph6(&g)));
        }
        if !is_two_connected(&g) {
            continue;
        }
        runs += 1;
        let cert = certified_long_cycle(&g).unwrap();
        let path: &OrientedPath = &cert.path;
        for &x in &cert.marks.x {
            if x == path.at(1) {
                continue;
            }
            rotations += 1;
            let pos = path.position(x).unwrap();
            // x⁻ ←P v₁ x →P v_p
            let mut vs: Vec<usize> = path.vertices()[..pos].iter().rev().copied().collect();
            vs.extend_from_slice(&path.vertices()[pos..]);
            let lib = path.rotate_at_front(x).map(|r| r.vertices().to_vec());
            if vs.len() != p || !is_path_in(&g, &vs) || lib.as_deref() != Some(vs.as_slice()) {
                rot.add(format!(
                    "{}: rotation at {x} of {:?}",
                    cert.graph6,
                    path.vertices()
                ));
            }
        }
        for &y in &cert.marks.y {
            if y == path.at(path.order() - 2) {
                continue;
            }
            rotations += 1;
            let pos = path.position(y).unwrap();
            // y⁺ →P v_p y ←P v₁
            let mut vs: Vec<usize> = path.vertices()[pos + 1..].to_vec();
            vs.extend(path.vertices()[..=pos].iter().rev());
            if vs.len() != p || !is_path_in(&g, &vs) {
                rot.add(format!(
                    "{}: back rotation at {y} of {:?}",
                    cert.graph6,
                    path.vertices()
                ));
            }
        }
    }
    let ok = s.c_le_p.count == 0 && c_le_p.count == 0 && s.codec.count == 0 && rot.count == 0;
    report(
        "criterion 6 (c <= p, codec round trip, rotation soundness)",
        ok,
        &format!(
            "c<=p: {} + {}; codec on {} graphs: {}; {rotations} rotations over {runs} runs: {}",
            s.c_le_p.summary(),
            c_le_p.summary(),
            s.graphs,
            s.codec.summary(),
            rot.summary()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_7_minimal_vines() {
    let s = sweep();
    let ok = s.vine.count == 0 && s.vines_checked == s.two_connected;
    report(
        "criterion 7 (minimal vines valid and minimal, 2-connected n <= 7)",
        ok,
        &format!(
            "{} vines; strict spacing claims false {:?}; {}",
            s.vines_checked,
            s.soft_claims_false,
            s.vine.summary()
        ),
    );
    assert!(ok);
}

#[test]
fn case_split_is_exhaustive() {
    let s = sweep();
    let total: u64 = s.cases.values().sum();
    let known = [
        CaseTrace::TailHit,
        CaseTrace::VineSurgery,
        CaseTrace::CrossingRotation,
        CaseTrace::CrossingGap,
    ]
    .map(|c| format!("{c:?}"));
    let ok = total == s.two_connected && s.cases.keys().all(|k| known.contains(k));
    report(
        "case split (every run lands in exactly one case)",
        ok,
        &format!("{:?}", s.cases),
    );
    assert!(ok);
}
