//! Degree-sequence sufficient conditions for Hamiltonicity and lower-bound
//! targets for the circumference.
//!
//! Hamiltonicity conditions, with `δ = d_1`:
//!
//! | tag  | condition                              |
//! |------|----------------------------------------|
//! | `B`  | `2δ ≥ n`                               |
//! | `D`  | `2d_δ ≥ n`                             |
//! | `T2` | `d_δ + d_{δ+1} ≥ n`                    |
//! | `T4` | `min{2d_{δ+1}, d_δ + d_{δ+2}} ≥ n`     |
//!
//! Circumference targets for 2-connected graphs with longest-path order `p`:
//!
//! | tag  | target                                 |
//! |------|----------------------------------------|
//! | `A`  | `min{p, 2δ}`                           |
//! | `C`  | `min{p, 2d_δ}`                         |
//! | `T1` | `min{p, d_δ + d_{δ+1}}`                |
//! | `T3` | `min{p, 2d_{δ+1}, d_δ + d_{δ+2}}`      |
//!
//! Any operand `d_k` with `k` outside `1..=n` makes the whole condition or
//! target `Inapplicable`; terms are never dropped from a `min`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::DegreeSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HamiltonCondition {
    B,
    D,
    T2,
    T4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundTheorem {
    A,
    C,
    T1,
    T3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Inapplicable,
}

/// The degree values every verdict is computed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Operands {
    pub n: usize,
    pub delta: usize,
    pub d_delta: Option<usize>,
    pub d_delta1: Option<usize>,
    pub d_delta2: Option<usize>,
}

impl Operands {
    pub fn of(ds: &DegreeSequence) -> Self {
        Self {
            n: ds.len(),
            delta: ds.min_degree(),
            d_delta: ds.d_delta_plus(0).value(),
            d_delta1: ds.d_delta_plus(1).value(),
            d_delta2: ds.d_delta_plus(2).value(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub condition: HamiltonCondition,
    pub status: Status,
    /// Left-hand side compared against `n`, when applicable.
    pub value: Option<usize>,
    pub operands: Operands,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundTarget {
    pub theorem: BoundTheorem,
    /// `None` when inapplicable.
    pub value: Option<usize>,
    pub p: usize,
}

/// Left-hand side of each Hamiltonicity condition.
pub fn condition_value(ds: &DegreeSequence, condition: HamiltonCondition) -> Option<usize> {
    let o = Operands::of(ds);
    match condition {
        HamiltonCondition::B => Some(2 * o.delta),
        HamiltonCondition::D => Some(2 * o.d_delta?),
        HamiltonCondition::T2 => Some(o.d_delta? + o.d_delta1?),
        HamiltonCondition::T4 => Some((2 * o.d_delta1?).min(o.d_delta? + o.d_delta2?)),
    }
}

pub fn condition_verdict(ds: &DegreeSequence, condition: HamiltonCondition) -> ConditionVerdict {
    let n = ds.len();
    let value = condition_value(ds, condition);
    let status = match value {
        None => Status::Inapplicable,
        Some(v) if v >= n => Status::Holds,
        Some(_) => Status::Fails,
    };
    ConditionVerdict {
        condition,
        status,
        value,
        operands: Operands::of(ds),
    }
}

/// Verdicts for `B`, `D`, `T2`, `T4`, in that order.
pub fn condition_verdicts(ds: &DegreeSequence) -> [ConditionVerdict; 4] {
    use HamiltonCondition::*;
    [B, D, T2, T4].map(|c| condition_verdict(ds, c))
}

/// Degree part of each circumference target (the `min` without `p`).
pub fn degree_bound(ds: &DegreeSequence, theorem: BoundTheorem) -> Option<usize> {
    let o = Operands::of(ds);
    match theorem {
        BoundTheorem::A => Some(2 * o.delta),
        BoundTheorem::C => Some(2 * o.d_delta?),
        BoundTheorem::T1 => Some(o.d_delta? + o.d_delta1?),
        BoundTheorem::T3 => Some((2 * o.d_delta1?).min(o.d_delta? + o.d_delta2?)),
    }
}

pub fn bound_target(ds: &DegreeSequence, p: usize, theorem: BoundTheorem) -> BoundTarget {
    BoundTarget {
        theorem,
        value: degree_bound(ds, theorem).map(|b| b.min(p)),
        p,
    }
}

/// Targets for `A`, `C`, `T1`, `T3`, in that order.
pub fn bound_targets(ds: &DegreeSequence, p: usize) -> [BoundTarget; 4] {
    use BoundTheorem::*;
    [A, C, T1, T3].map(|t| bound_target(ds, p, t))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("implication chain violated at {step}: {detail}")]
pub struct ChainViolation {
    pub step: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationStep {
    pub step: &'static str,
    pub lhs: Option<usize>,
    pub rhs: Option<usize>,
}

/// Checks `2d_1 ≤ 2d_δ ≤ d_δ + d_{δ+1} ≤ min{2d_{δ+1}, d_δ + d_{δ+2}}` and the
/// induced verdict chain `B ⇒ D ⇒ T2 ⇒ (T4 or Inapplicable)`.
///
/// A violation can only come from a bug, never from the input graph.
pub fn implication_audit(ds: &DegreeSequence) -> Result<Vec<ImplicationStep>, ChainViolation> {
    use HamiltonCondition::*;
    let values = [B, D, T2, T4].map(|c| condition_value(ds, c));
    let names = [
        "2d_1 <= 2d_delta",
        "2d_delta <= d_delta+d_delta1",
        "d_delta+d_delta1 <= T4 min",
    ];
    let mut report = Vec::new();
    for (i, step) in names.into_iter().enumerate() {
        let (lhs, rhs) = (values[i], values[i + 1]);
        if let (Some(l), Some(r)) = (lhs, rhs) {
            if l > r {
                return Err(ChainViolation {
                    step,
                    detail: format!("{l} > {r}"),
                });
            }
        }
        report.push(ImplicationStep { step, lhs, rhs });
    }

    let [b, d, t2, t4] = condition_verdicts(ds).map(|v| v.status);
    let implied = [("B => D", b, d), ("D => T2", d, t2), ("T2 => T4", t2, t4)];
    for (step, from, to) in implied {
        if from == Status::Holds && to == Status::Fails {
            return Err(ChainViolation {
                step,
                detail: format!("{from:?} but {to:?}"),
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn ds(v: &[usize]) -> DegreeSequence {
        DegreeSequence::from_degrees(v.to_vec())
    }

    #[test]
    fn e2_delta2_verdicts() {
        let [b, d, t2, t4] = condition_verdicts(&ds(&[2, 2, 2, 4, 4]));
        assert_eq!(t2.value, Some(4));
        assert_eq!(t2.status, Status::Fails);
        assert_eq!(t4.value, Some(4));
        assert_eq!(t4.status, Status::Fails);
        assert_eq!(b.status, Status::Fails);
        assert_eq!(d.status, Status::Fails);
        assert_eq!(t2.operands.d_delta2, Some(4));
    }

    #[test]
    fn complete_graph_t4_inapplicable() {
        let [b, _, t2, t4] = condition_verdicts(&ds(&[3, 3, 3, 3]));
        assert_eq!(b.status, Status::Holds);
        assert_eq!(b.value, Some(6));
        assert_eq!(t2.status, Status::Holds);
        assert_eq!(t4.status, Status::Inapplicable);
        assert_eq!(t4.value, None);
    }

    #[test]
    fn five_cycle_fails_everything() {
        let c5 = Graph::cycle(5).unwrap().degree_sequence();
        for v in condition_verdicts(&c5) {
            assert_eq!(v.status, Status::Fails, "{:?}", v.condition);
        }
    }

    #[test]
    fn isolated_vertex_makes_indexed_conditions_inapplicable() {
        let [b, d, t2, t4] = condition_verdicts(&ds(&[0, 1, 1]));
        assert_eq!(b.status, Status::Fails);
        for v in [d, t2, t4] {
            assert_eq!(v.status, Status::Inapplicable);
        }
    }

    #[test]
    fn bound_target_examples() {
        let [_, _, t1, t3] = bound_targets(&ds(&[2, 2, 2, 4, 4]), 5);
        assert_eq!(t1.value, Some(4));
        assert_eq!(t3.value, Some(4));

        let [_, _, _, t3] = bound_targets(&ds(&[2, 2, 3, 3, 5, 5]), 6);
        assert_eq!(t3.value, Some(5));

        let [a, c, t1, t3] = bound_targets(&ds(&[3, 3, 3, 3]), 4);
        assert_eq!((a.value, c.value, t1.value), (Some(4), Some(4), Some(4)));
        assert_eq!(t3.value, None);
    }

    #[test]
    fn e1_delta2_fails_t2_and_t4() {
        let s = ds(&[2, 2, 3, 3, 5, 5]);
        let [_, _, t2, t4] = condition_verdicts(&s);
        assert_eq!((t2.value, t2.status), (Some(5), Status::Fails));
        assert_eq!((t4.value, t4.status), (Some(5), Status::Fails));
        assert_eq!(implication_audit(&s).unwrap().len(), 3);
    }
}
