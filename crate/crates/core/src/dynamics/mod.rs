//! Exhaustive asynchronous dynamics: transition graphs, attractors, fixed
//! points and pinned subsystems.

mod scc;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{check_state_cap, Error, Result};
use crate::exec::Execution;
use crate::network::{
    make_source, pin_assignment, render_state, BooleanNetwork, CompiledNetwork, NetworkState, VarId,
};

pub use scc::digraph_attractors;
use scc::{terminal_sccs, Successors};

/// Largest network whose transition graph is dumped as an edge list.
pub const STG_DUMP_MAX_VARIABLES: usize = 10;

/// Asynchronous state transition graph. State `x` moves to `x ^ (1 << v)`
/// for every `v` whose update function disagrees with `x_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateTransitionGraph {
    variables: usize,
    update_masks: Vec<u64>,
}

impl StateTransitionGraph {
    pub fn variable_count(&self) -> usize {
        self.variables
    }

    pub fn state_count(&self) -> u64 {
        1 << self.variables
    }

    /// Bit `v` is set when variable `v` can be updated in `state`.
    pub fn update_mask(&self, state: u64) -> u64 {
        self.update_masks[state as usize]
    }

    /// `(updated variable, successor state)` pairs in variable order.
    pub fn successors(&self, state: u64) -> impl Iterator<Item = (VarId, u64)> {
        Bits(self.update_mask(state)).map(move |v| (VarId(v), state ^ (1 << v)))
    }

    pub fn arc_count(&self) -> u64 {
        self.update_masks
            .iter()
            .map(|m| u64::from(m.count_ones()))
            .sum()
    }

    /// One `from -> to` line per transition, states as 0/1 strings.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for x in 0..self.state_count() {
            for (_, y) in self.successors(x) {
                out.push_str(&render_state(x, self.variables));
                out.push_str(" -> ");
                out.push_str(&render_state(y, self.variables));
                out.push('\n');
            }
        }
        out
    }
}

/// Set bits of a mask, lowest first.
pub(crate) struct Bits(u64);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let bit = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(bit)
    }
}

pub(crate) struct StgSuccessors {
    state: usize,
    bits: Bits,
}

impl Iterator for StgSuccessors {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        self.bits.next().map(|v| self.state ^ (1 << v))
    }
}

impl Successors for StateTransitionGraph {
    type Iter<'a> = StgSuccessors;

    fn node_count(&self) -> usize {
        self.update_masks.len()
    }

    fn successors(&self, v: usize) -> StgSuccessors {
        StgSuccessors {
            state: v,
            bits: Bits(self.update_masks[v]),
        }
    }
}

/// Builds the transition graph; fails when the network has more than `cap` variables.
pub fn build_astg(
    network: &BooleanNetwork,
    cap: usize,
    exec: Execution,
) -> Result<StateTransitionGraph> {
    check_state_cap(network.len(), cap)?;
    let compiled = CompiledNetwork::new(network);
    let update_masks = exec.map_range(0..1u64 << network.len(), |x| compiled.update_mask(x));
    Ok(StateTransitionGraph {
        variables: network.len(),
        update_masks,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttractorKind {
    Fixed,
    Cyclic,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Attractor {
    /// Sorted state indices.
    pub states: Vec<u64>,
}

impl Attractor {
    pub fn kind(&self) -> AttractorKind {
        if self.states.len() == 1 {
            AttractorKind::Fixed
        } else {
            AttractorKind::Cyclic
        }
    }

    pub fn is_fixed_point(&self) -> bool {
        self.kind() == AttractorKind::Fixed
    }
}

/// Attractors sorted by smallest member state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttractorSet {
    variables: usize,
    attractors: Vec<Attractor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttractorJson {
    pub states: Vec<String>,
    pub kind: AttractorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttractorSetJson {
    pub attractors: Vec<AttractorJson>,
    pub count: usize,
}

impl AttractorSet {
    fn new(variables: usize, mut attractors: Vec<Attractor>) -> Self {
        attractors.sort();
        AttractorSet {
            variables,
            attractors,
        }
    }

    pub fn variable_count(&self) -> usize {
        self.variables
    }

    pub fn attractors(&self) -> &[Attractor] {
        &self.attractors
    }

    pub fn len(&self) -> usize {
        self.attractors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attractors.is_empty()
    }

    pub fn fixed_point_count(&self) -> usize {
        self.attractors
            .iter()
            .filter(|a| a.is_fixed_point())
            .count()
    }

    /// Each attractor as rendered 0/1 strings, for comparisons in tests.
    pub fn rendered(&self) -> Vec<Vec<String>> {
        self.attractors
            .iter()
            .map(|a| {
                a.states
                    .iter()
                    .map(|&s| render_state(s, self.variables))
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> AttractorSetJson {
        let attractors = self
            .attractors
            .iter()
            .zip(self.rendered())
            .map(|(a, states)| AttractorJson {
                states,
                kind: a.kind(),
            })
            .collect();
        AttractorSetJson {
            attractors,
            count: self.len(),
        }
    }
}

/// Attractors as terminal strongly connected components.
pub fn attractors_scc(stg: &StateTransitionGraph) -> AttractorSet {
    let attractors = terminal_sccs(stg)
        .into_iter()
        .map(|c| Attractor {
            states: c.into_iter().map(|s| s as u64).collect(),
        })
        .collect();
    AttractorSet::new(stg.variables, attractors)
}

/// Builds the transition graph and returns its attractors.
pub fn attractors(network: &BooleanNetwork, cap: usize, exec: Execution) -> Result<AttractorSet> {
    Ok(attractors_scc(&build_astg(network, cap, exec)?))
}

/// Attractors as ⊆-minimal forward-closed sets, computed from every state's
/// reachable set without any SCC machinery. Quadratic in the state count.
pub fn attractors_trapset_oracle(stg: &StateTransitionGraph, cap: usize) -> Result<AttractorSet> {
    check_state_cap(stg.variables, cap)?;
    let closures: BTreeSet<Vec<u64>> = (0..stg.state_count())
        .map(|x| {
            let mut seen = BTreeSet::from([x]);
            let mut frontier = vec![x];
            while let Some(y) = frontier.pop() {
                for (_, z) in stg.successors(y) {
                    if seen.insert(z) {
                        frontier.push(z);
                    }
                }
            }
            seen.into_iter().collect()
        })
        .collect();
    let is_subset = |a: &Vec<u64>, b: &Vec<u64>| a.iter().all(|s| b.binary_search(s).is_ok());
    let minimal = closures
        .iter()
        .filter(|c| {
            !closures
                .iter()
                .any(|d| d.len() < c.len() && is_subset(d, c))
        })
        .map(|c| Attractor { states: c.clone() })
        .collect();
    Ok(AttractorSet::new(stg.variables, minimal))
}

/// States where every update function agrees with the current value.
pub fn fixed_points(
    network: &BooleanNetwork,
    cap: usize,
    exec: Execution,
) -> Result<Vec<NetworkState>> {
    check_state_cap(network.len(), cap)?;
    let compiled = CompiledNetwork::new(network);
    let mut found = exec.fold_range(
        0..1u64 << network.len(),
        Vec::new,
        |mut acc, x| {
            if compiled.update_mask(x) == 0 {
                acc.push(x);
            }
            acc
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    found.sort_unstable();
    Ok(found
        .into_iter()
        .map(|x| NetworkState::from_index(x, network.len()))
        .collect())
}

/// Attractors of `make_source(network, pinned)` agreeing with `assignment`,
/// obtained from the network with the pinned variables set constant.
pub fn attractors_restricted(
    network: &BooleanNetwork,
    pinned: &BTreeSet<VarId>,
    assignment: &BTreeMap<VarId, bool>,
    cap: usize,
    exec: Execution,
) -> Result<AttractorSet> {
    if !assignment.keys().eq(pinned.iter()) {
        return Err(Error::AssignmentDomain);
    }
    let subsystem = pin_assignment(&make_source(network, pinned), assignment);
    attractors(&subsystem, cap, exec)
}

/// Every assignment over `pinned` with its pinned attractors, in ascending
/// order of the assignment read as a binary number (first pinned variable lowest).
pub fn pinned_attractors(
    network: &BooleanNetwork,
    pinned: &BTreeSet<VarId>,
    cap: usize,
    exec: Execution,
) -> Result<Vec<(BTreeMap<VarId, bool>, AttractorSet)>> {
    check_state_cap(network.len(), cap)?;
    let vars: Vec<VarId> = pinned.iter().copied().collect();
    let assignments: Vec<BTreeMap<VarId, bool>> = (0..1u64 << vars.len())
        .map(|bits| {
            vars.iter()
                .enumerate()
                .map(|(i, &v)| (v, bits >> i & 1 == 1))
                .collect()
        })
        .collect();
    // Parallelism goes across assignments; each pinned sweep runs sequentially.
    exec.map_slice(&assignments, |x| {
        attractors_restricted(network, pinned, x, cap, Execution::Sequential)
            .map(|set| (x.clone(), set))
    })
    .into_iter()
    .collect()
}

/// Union of the pinned attractors over all assignments: the attractors of
/// `make_source(network, pinned)`.
pub fn attractors_restricted_union(
    network: &BooleanNetwork,
    pinned: &BTreeSet<VarId>,
    cap: usize,
    exec: Execution,
) -> Result<AttractorSet> {
    let parts = pinned_attractors(network, pinned, cap, exec)?;
    let all = parts
        .into_iter()
        .flat_map(|(_, set)| set.attractors)
        .collect();
    Ok(AttractorSet::new(network.len(), all))
}
