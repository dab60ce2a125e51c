//! Constructive long-cycle certificates.
//!
//! The pipeline mirrors the classical rotation/vine argument:
//!
//! 1. pick an *extremal* longest path `P = v₁ … v_p`: `d(v₁)` maximum over
//!    all oriented longest paths, then `d(v_p)` maximum among those;
//! 2. mark the neighbours of both ends along `P` and classify the layout
//!    (closing edge, non-crossing, crossing);
//! 3. certify the endpoint degree floors that follow from extremality;
//! 4. build a cycle: close the path, splice a minimal vine into it, or cut
//!    across a crossing pair of chords;
//! 5. package everything as a [`CycleCertificate`] that an independent
//!    checker can re-validate from adjacency alone.
//!
//! Every structural fact the argument relies on is checked at runtime and a
//! failure surfaces as a [`ProverError`] carrying the offending state.

mod certificate;
mod extremal;
mod marks;
mod surgery;
mod vine;

pub use certificate::{
    certified_long_cycle, certified_long_cycle_with_budget, hamilton_via_condition,
    validate_certificate, CaseTrace, CertificateCheck, CertificateError, CycleCertificate,
    HamiltonProof, CERTIFICATE_SCHEMA_VERSION,
};
pub use extremal::select_extremal_longest_path;
pub use marks::{
    degree_floor_inequalities, endpoint_marks, DegreeFloors, EndpointMarks, MarkLayout,
    RefinedFloor,
};
pub use surgery::{build_crossing_cycle, build_vine_cycle, ClaimCheck, CrossingKind, VineSurgery};
pub use vine::{check_vine, find_minimal_vine, longest_path_vine_claims, Ear, Vine};

use thiserror::Error;

use crate::oracle::OracleError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not 2-connected (κ = {kappa}, cut vertex {cut_vertex:?})")]
    NotTwoConnected {
        kappa: usize,
        cut_vertex: Option<usize>,
    },
    #[error("not a longest path: vertex {vertex} adjacent to end {end} lies off the path")]
    NotLongestPath { end: usize, vertex: usize },
    #[error("degree inequality violated: {0}")]
    InequalityViolated(String),
    #[error("no vine exists on the given path")]
    NoVineFound,
    #[error("vine invalid: {0}")]
    VineInvalid(String),
    #[error("cycle construction invalid: {0}")]
    ConstructionInvalid(String),
    #[error("no Hamiltonicity condition holds for this graph")]
    ConditionNotSatisfied,
    #[error("proof gap: {0}")]
    ProofGapViolated(String),
    #[error(transparent)]
    ResourceLimit(#[from] OracleError),
}
