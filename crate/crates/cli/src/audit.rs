//! Per-graph audit: degree conditions, exact parameters, bound checks and a
//! constructive certificate.

use serde::Serialize;

use circumlab::conditions::{
    bound_targets, condition_verdicts, BoundTheorem, HamiltonCondition, Status,
};
use circumlab::connectivity::vertex_connectivity;
use circumlab::graph::Graph;
use circumlab::graph6::{emit_graph6, parse_graph6};
use circumlab::oracle::{circumference, is_hamiltonian, longest_path};
use circumlab::prover::{
    certified_long_cycle, hamilton_via_condition, validate_certificate, CaseTrace, ProverError,
};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub condition: HamiltonCondition,
    pub status: Status,
    pub value: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Target {
    pub theorem: BoundTheorem,
    pub value: Option<usize>,
    /// `c ≥ value`; `None` when the target does not apply.
    pub met: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub case: CaseTrace,
    pub achieved: usize,
    pub guaranteed_t1: usize,
    pub guaranteed_t3: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRecord {
    pub schema_version: u32,
    pub line: usize,
    pub graph6: String,
    pub n: usize,
    pub edges: usize,
    pub delta: usize,
    pub d_delta: Option<usize>,
    pub d_delta1: Option<usize>,
    pub d_delta2: Option<usize>,
    pub kappa: usize,
    pub p: usize,
    pub c: usize,
    pub hamiltonian: bool,
    pub conditions: Vec<Verdict>,
    pub bounds: Vec<Target>,
    pub certificate: Option<CertificateSummary>,
    /// Set when a search hit its budget; the record is then incomplete.
    pub note: Option<String>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputError {
    pub schema_version: u32,
    pub line: usize,
    pub token: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Record {
    Audit(Box<AuditRecord>),
    Input(InputError),
}

/// Parses one input line and audits it.
pub fn audit_line(line: usize, token: &str) -> Record {
    match parse_graph6(token) {
        Ok(g) => Record::Audit(Box::new(audit_graph(line, &g))),
        Err(e) => Record::Input(InputError {
            schema_version: REPORT_SCHEMA_VERSION,
            line,
            token: token.to_string(),
            error: e.to_string(),
        }),
    }
}

pub fn audit_graph(line: usize, g: &Graph) -> AuditRecord {
    let n = g.order();
    let ds = g.degree_sequence();
    let delta = ds.min_degree();
    let kappa = vertex_connectivity(g).kappa;
    let p = longest_path(g).map_or(0, |lp| lp.order);
    let c = circumference(g).order();
    let hamiltonian = n >= 3 && is_hamiltonian(g);
    let two_connected = n >= 3 && kappa >= 2;
    let mut violations = Vec::new();
    let mut note = None;

    if c > p {
        violations.push(format!("circumference {c} exceeds longest path {p}"));
    }

    let verdicts = condition_verdicts(&ds);
    for v in &verdicts {
        if n >= 3 && v.status == Status::Holds {
            if !hamiltonian {
                violations.push(format!(
                    "{:?} holds but the graph is not hamiltonian",
                    v.condition
                ));
            }
            if kappa < 2 {
                violations.push(format!("{:?} holds but κ = {kappa}", v.condition));
            }
        }
    }
    let t2_or_t4 = verdicts[2..].iter().any(|v| v.status == Status::Holds);
    if n >= 3 && t2_or_t4 {
        if let Err(e) = hamilton_via_condition(g) {
            match e {
                ProverError::ResourceLimit(e) => note = Some(e.to_string()),
                e => violations.push(format!("spanning cycle construction: {e}")),
            }
        }
    }

    let bounds = bound_targets(&ds, p)
        .into_iter()
        .map(|t| {
            let met = match (two_connected, t.value) {
                (true, Some(v)) => Some(c >= v),
                _ => None,
            };
            if met == Some(false) {
                violations.push(format!("{:?}: c = {c} < {}", t.theorem, t.value.unwrap()));
            }
            Target {
                theorem: t.theorem,
                value: t.value,
                met,
            }
        })
        .collect();

    let mut certificate = None;
    if two_connected {
        match certified_long_cycle(g) {
            Ok(cert) => {
                if cert.achieved > c {
                    violations.push(format!(
                        "certified cycle {} longer than c = {c}",
                        cert.achieved
                    ));
                }
                if let Err(e) = validate_certificate(&cert) {
                    violations.push(format!("certificate rejected: {e}"));
                }
                certificate = Some(CertificateSummary {
                    case: cert.case,
                    achieved: cert.achieved,
                    guaranteed_t1: cert.guaranteed_t1,
                    guaranteed_t3: cert.guaranteed_t3,
                });
            }
            Err(ProverError::ResourceLimit(e)) => note = Some(e.to_string()),
            Err(e) => violations.push(format!("certificate: {e}")),
        }
    }

    AuditRecord {
        schema_version: REPORT_SCHEMA_VERSION,
        line,
        graph6: emit_graph6(g),
        n,
        edges: g.edge_count(),
        delta,
        d_delta: ds.d(delta),
        d_delta1: ds.d(delta + 1),
        d_delta2: ds.d(delta + 2),
        kappa,
        p,
        c,
        hamiltonian,
        conditions: verdicts
            .iter()
            .map(|v| Verdict {
                condition: v.condition,
                status: v.status,
                value: v.value,
            })
            .collect(),
        bounds,
        certificate,
        note,
        violations,
    }
}
