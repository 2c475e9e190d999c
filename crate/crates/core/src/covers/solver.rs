//! Minimum hitting sets by branch and bound, with a greedy fallback.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::ConstraintFamily;
use crate::network::VarId;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverMode {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    pub mode: SolverMode,
    /// Branch nodes the exact search may visit before falling back to greedy.
    pub node_budget: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            mode: SolverMode::Exact,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSet {
    pub members: BTreeSet<VarId>,
    /// No strictly smaller hitting set exists.
    pub certified_minimal: bool,
    pub method: SolverMode,
    /// The exact search ran out of budget and this set came from greedy.
    pub budget_exceeded: bool,
}

impl WitnessSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A smallest hitting set of `family`; among those of minimum size, the
/// lexicographically smallest in variable order.
///
/// Greedy mode repeatedly takes the variable hitting the most unhit
/// constraints (lowest index on ties) and is never certified minimal.
pub fn min_hitting_set(family: &ConstraintFamily, options: SolverOptions) -> WitnessSet {
    let instance = Instance::new(family);
    match options.mode {
        SolverMode::Greedy => greedy_result(&instance, false),
        SolverMode::Exact => {
            let mut search = Search {
                instance: &instance,
                nodes: 0,
                budget: options.node_budget,
            };
            match search.lexicographic_minimum() {
                Some(members) => WitnessSet {
                    members: instance.to_vars(&members),
                    certified_minimal: true,
                    method: SolverMode::Exact,
                    budget_exceeded: false,
                },
                None => greedy_result(&instance, true),
            }
        }
    }
}

fn greedy_result(instance: &Instance, budget_exceeded: bool) -> WitnessSet {
    WitnessSet {
        members: instance.to_vars(&instance.greedy()),
        certified_minimal: instance.sets.is_empty(),
        method: SolverMode::Greedy,
        budget_exceeded,
    }
}

/// Constraints over dense element indices `0..vars.len()`, with duplicates
/// and supersets of other constraints removed.
struct Instance {
    vars: Vec<VarId>,
    sets: Vec<Vec<usize>>,
}

impl Instance {
    fn new(family: &ConstraintFamily) -> Self {
        let vars: Vec<VarId> = family
            .constraints()
            .iter()
            .flat_map(|c| c.candidates.iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let dense = |v: &VarId| vars.binary_search(v).expect("collected above");
        let mut sets: Vec<Vec<usize>> = family
            .constraints()
            .iter()
            .map(|c| c.candidates.iter().map(dense).collect())
            .collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        sets.dedup();
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for set in sets {
            let redundant = kept
                .iter()
                .any(|k| k.iter().all(|e| set.binary_search(e).is_ok()));
            if !redundant {
                kept.push(set);
            }
        }
        Instance { vars, sets: kept }
    }

    fn to_vars(&self, elements: &[usize]) -> BTreeSet<VarId> {
        elements.iter().map(|&e| self.vars[e]).collect()
    }

    fn greedy(&self) -> Vec<usize> {
        let mut hit = vec![false; self.sets.len()];
        let mut chosen = Vec::new();
        while hit.iter().any(|h| !h) {
            let mut counts = vec![0usize; self.vars.len()];
            for (set, _) in self.sets.iter().zip(&hit).filter(|(_, h)| !**h) {
                for &e in set {
                    counts[e] += 1;
                }
            }
            // max_by_key keeps the last maximum; iterate in reverse to prefer low indices.
            let best = (0..counts.len())
                .rev()
                .max_by_key(|&e| counts[e])
                .expect("an unhit constraint exists");
            chosen.push(best);
            for (set, h) in self.sets.iter().zip(hit.iter_mut()) {
                if set.binary_search(&best).is_ok() {
                    *h = true;
                }
            }
        }
        chosen.sort_unstable();
        chosen
    }
}

struct Search<'a> {
    instance: &'a Instance,
    nodes: u64,
    budget: u64,
}

/// Outcome of one bounded feasibility search.
enum Found {
    Yes,
    No,
    OutOfBudget,
}

impl Search<'_> {
    /// Optimum size by iterative deepening, then the lexicographically
    /// smallest set of that size built one element at a time. `None` when
    /// the node budget runs out.
    fn lexicographic_minimum(&mut self) -> Option<Vec<usize>> {
        let m = self.instance.vars.len();
        let upper = self.instance.greedy().len();
        let all_allowed = vec![true; m];
        let mut chosen = vec![false; m];
        let mut optimum = upper;
        for limit in self.packing_bound(&chosen, &all_allowed)..upper {
            match self.feasible(&mut chosen, 0, limit, &all_allowed) {
                Found::Yes => {
                    optimum = limit;
                    break;
                }
                Found::No => {}
                Found::OutOfBudget => return None,
            }
        }

        let mut result: Vec<usize> = Vec::with_capacity(optimum);
        while !self.hits_all(&chosen) {
            let floor = result.last().map_or(0, |&e| e + 1);
            let mut extended = false;
            for v in floor..m {
                chosen[v] = true;
                let allowed: Vec<bool> = (0..m).map(|e| e > v).collect();
                match self.feasible(&mut chosen, result.len() + 1, optimum, &allowed) {
                    Found::Yes => {
                        result.push(v);
                        extended = true;
                        break;
                    }
                    Found::No => chosen[v] = false,
                    Found::OutOfBudget => return None,
                }
            }
            assert!(
                extended,
                "an optimum-size hitting set extends the current prefix"
            );
        }
        Some(result)
    }

    fn hits_all(&self, chosen: &[bool]) -> bool {
        self.instance
            .sets
            .iter()
            .all(|s| s.iter().any(|&e| chosen[e]))
    }

    /// Size of a greedy packing of pairwise disjoint unhit constraints,
    /// counting only allowed elements. Each needs its own new element.
    fn packing_bound(&self, chosen: &[bool], allowed: &[bool]) -> usize {
        let mut used = vec![false; chosen.len()];
        let mut bound = 0;
        for set in &self.instance.sets {
            if set.iter().any(|&e| chosen[e]) {
                continue;
            }
            if set.iter().filter(|&&e| allowed[e]).all(|&e| !used[e]) {
                bound += 1;
                for &e in set {
                    used[e] = true;
                }
            }
        }
        bound
    }

    /// Whether `chosen` (of size `size`) extends to a hitting set of at most
    /// `limit` elements using only `allowed` additional elements.
    fn feasible(
        &mut self,
        chosen: &mut [bool],
        size: usize,
        limit: usize,
        allowed: &[bool],
    ) -> Found {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Found::OutOfBudget;
        }
        // Branch on the unhit constraint with the fewest allowed elements.
        let mut branch: Option<Vec<usize>> = None;
        for set in &self.instance.sets {
            if set.iter().any(|&e| chosen[e]) {
                continue;
            }
            let options: Vec<usize> = set.iter().copied().filter(|&e| allowed[e]).collect();
            if options.is_empty() {
                return Found::No;
            }
            if branch.as_ref().is_none_or(|b| options.len() < b.len()) {
                branch = Some(options);
            }
        }
        let Some(options) = branch else {
            return Found::Yes;
        };
        if size + self.packing_bound(chosen, allowed) > limit {
            return Found::No;
        }
        for e in options {
            chosen[e] = true;
            let outcome = self.feasible(chosen, size + 1, limit, allowed);
            chosen[e] = false;
            if !matches!(outcome, Found::No) {
                return outcome;
            }
        }
        Found::No
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{Constraint, FamilyKind};

    fn family(sets: &[&[usize]]) -> ConstraintFamily {
        let constraints = sets
            .iter()
            .enumerate()
            .map(|(i, s)| Constraint {
                label: format!("C{}", i + 1),
                candidates: s.iter().map(|&v| VarId(v)).collect(),
            })
            .collect();
        ConstraintFamily::new(FamilyKind::StrongEven, constraints, true).unwrap()
    }

    fn ids(set: &BTreeSet<VarId>) -> Vec<usize> {
        set.iter().map(|v| v.0).collect()
    }

    #[test]
    fn four_variable_example_sets() {
        // Dominating family: {a, b, d} and {d}.
        let w = min_hitting_set(&family(&[&[0, 1, 3], &[3]]), SolverOptions::default());
        assert_eq!(ids(&w.members), [3]);
        assert!(w.certified_minimal);
        // Strong even family: {a, b} and {d}; ties broken towards {a, d}.
        let w = min_hitting_set(&family(&[&[0, 1], &[3]]), SolverOptions::default());
        assert_eq!(ids(&w.members), [0, 3]);
        assert_eq!(w.method, SolverMode::Exact);
    }

    #[test]
    fn empty_family_gives_empty_certified_set() {
        for mode in [SolverMode::Exact, SolverMode::Greedy] {
            let w = min_hitting_set(
                &family(&[]),
                SolverOptions {
                    mode,
                    ..Default::default()
                },
            );
            assert!(w.is_empty());
            assert!(w.certified_minimal);
        }
    }

    #[test]
    fn greedy_can_be_suboptimal() {
        // Greedy takes 0 on a three-way tie, then needs 1 and 2; optimum is {1, 2}.
        let f = family(&[&[0, 1], &[0, 2], &[0, 3, 1], &[1, 4], &[2, 5]]);
        let exact = min_hitting_set(&f, SolverOptions::default());
        assert_eq!(ids(&exact.members), [1, 2]);
        let greedy = min_hitting_set(
            &f,
            SolverOptions {
                mode: SolverMode::Greedy,
                ..Default::default()
            },
        );
        assert!(f.is_hit_by(&greedy.members));
        assert!(greedy.len() >= exact.len());
        assert!(!greedy.certified_minimal);
    }

    #[test]
    fn budget_exhaustion_falls_back_to_greedy() {
        let f = family(&[&[0, 1], &[2, 3], &[4, 5], &[1, 2], &[3, 4]]);
        let w = min_hitting_set(
            &f,
            SolverOptions {
                mode: SolverMode::Exact,
                node_budget: 1,
            },
        );
        assert!(w.budget_exceeded);
        assert_eq!(w.method, SolverMode::Greedy);
        assert!(!w.certified_minimal);
        assert!(f.is_hit_by(&w.members));
    }

    #[test]
    fn lexicographic_tie_break() {
        // Size-2 optima: {0,2}, {1,2}, {0,3}... the smallest is {0, 2}.
        let f = family(&[&[0, 1], &[2, 3]]);
        assert_eq!(
            ids(&min_hitting_set(&f, SolverOptions::default()).members),
            [0, 2]
        );
        let f = family(&[&[5, 1], &[1, 4], &[4, 7]]);
        assert_eq!(
            ids(&min_hitting_set(&f, SolverOptions::default()).members),
            [1, 4]
        );
    }
}
