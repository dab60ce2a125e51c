//! Circumference and Hamiltonicity from sorted degree sequences.
//!
//! * [`graph`]: bitset graphs on up to 62 vertices and degree sequences.
//! * [`graph6`]: the graph6 text codec.
//! * [`connectivity`]: vertex connectivity and cut vertices.
//! * [`oracle`]: exact longest path, circumference and Hamilton cycle search.
//! * [`conditions`]: degree conditions and circumference targets.
//! * [`prover`]: constructive long cycles with checkable certificates.
//! * [`families`]: graphs showing the bounds are tight.
//! * [`enumerate`]: labeled graph enumeration for exhaustive audits.

pub mod conditions;
pub mod connectivity;
pub mod enumerate;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod oracle;
pub mod prover;

pub use conditions::{
    bound_target, bound_targets, condition_verdict, condition_verdicts, implication_audit,
    BoundTarget, BoundTheorem, ConditionVerdict, HamiltonCondition, Status,
};
pub use connectivity::{is_two_connected, vertex_connectivity, Connectivity};
pub use enumerate::{graph_from_edge_mask, labeled_graphs, Filter};
pub use families::{generate, sharpness_audit, FamilyKind, FamilySpec, SharpnessReport};
pub use graph::{DegreeSequence, Graph, GraphError, IndexedDegree};
pub use graph6::{emit_graph6, parse_graph6, Graph6Error};
pub use oracle::{circumference, hamiltonian_cycle, longest_path, CycleWitness, OrientedPath};
pub use prover::{
    certified_long_cycle, hamilton_via_condition, validate_certificate, CycleCertificate,
};
