//! Witness vertex sets: even feedback vertex sets, strong-even-cycle hitting
//! sets and dominating sets, all expressed as hitting-set instances.

mod solver;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cycles::CycleClassification;
use crate::error::{Error, Result};
use crate::network::VarId;

pub use solver::{min_hitting_set, SolverMode, SolverOptions, WitnessSet, DEFAULT_NODE_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// Hit every even cycle.
    EvenFvs,
    /// Hit every strong even cycle.
    StrongEven,
    /// Dominate the graph: hit every consistent even cycle, and hit or contain
    /// a pivot of every strong inconsistent even cycle.
    Dominating,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [
        FamilyKind::EvenFvs,
        FamilyKind::StrongEven,
        FamilyKind::Dominating,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    /// Source cycle, e.g. `C3` for the third classified cycle.
    pub label: String,
    pub candidates: BTreeSet<VarId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintFamily {
    kind: FamilyKind,
    constraints: Vec<Constraint>,
    certified: bool,
}

impl ConstraintFamily {
    /// Rejects empty candidate sets, which no vertex set can hit.
    pub fn new(kind: FamilyKind, constraints: Vec<Constraint>, certified: bool) -> Result<Self> {
        if let Some(c) = constraints.iter().find(|c| c.candidates.is_empty()) {
            return Err(Error::EmptyConstraint {
                label: c.label.clone(),
            });
        }
        Ok(ConstraintFamily {
            kind,
            constraints,
            certified,
        })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// `false` when built from a truncated cycle enumeration: a missed cycle
    /// could leave a returned set short of the theorem's requirement.
    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn is_hit_by(&self, set: &BTreeSet<VarId>) -> bool {
        self.constraints
            .iter()
            .all(|c| !c.candidates.is_disjoint(set))
    }
}

/// Builds the hitting-set instance of the given kind from classified cycles.
///
/// Odd cycles never contribute. For [`FamilyKind::Dominating`], an even cycle
/// with a delocalizing triple contributes nothing either.
pub fn build_constraints(
    classification: &CycleClassification,
    kind: FamilyKind,
) -> ConstraintFamily {
    let mut constraints = Vec::new();
    for (i, record) in classification.records.iter().enumerate() {
        if !record.is_even() {
            continue;
        }
        let mut candidates = record.cycle.vertex_set();
        let include = match kind {
            FamilyKind::EvenFvs => true,
            FamilyKind::StrongEven => record.is_strong(),
            FamilyKind::Dominating => {
                if record.is_strong() && !record.is_consistent() {
                    candidates.extend(record.pivots());
                }
                record.is_strong()
            }
        };
        if include {
            constraints.push(Constraint {
                label: format!("C{}", i + 1),
                candidates,
            });
        }
    }
    ConstraintFamily::new(kind, constraints, !classification.truncated)
        .expect("cycle vertex sets are non-empty")
}
