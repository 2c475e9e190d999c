//! Delocalizing triples, inconsistency witnesses and locality of cycles.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{enumerate_cycles, Parity, SignedCycle};
use crate::error::{check_state_cap, Result};
use crate::exec::Execution;
use crate::influence::{SignedArc, SignedDigraph};
use crate::network::{BooleanNetwork, CompiledNetwork, NetworkState, Sign, VarId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TripleKind {
    Internal,
    External,
}

/// `(u, v1, v2)`: `u -> v1 +` and `u -> v2 -` are arcs of the graph but not of
/// the cycle, with `v1 != v2` both on the cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DelocalizingTriple {
    pub pivot: VarId,
    pub positive_target: VarId,
    pub negative_target: VarId,
    pub kind: TripleKind,
}

/// All delocalizing triples of `cycle` in `graph`, ordered by `(u, v1, v2)`.
/// The cycle is strong iff this is empty.
pub fn delocalizing_triples(graph: &SignedDigraph, cycle: &SignedCycle) -> Vec<DelocalizingTriple> {
    let on_cycle = &cycle.vertex_set();
    let mut triples = Vec::new();
    for &u in graph.vertices() {
        let outside_cycle_arcs = |sign: Sign| {
            graph
                .successors(u)
                .iter()
                .filter(move |&&(t, s)| s == sign && on_cycle.contains(&t))
                .map(move |&(t, s)| SignedArc::new(u, t, s))
                .filter(move |arc| !cycle.contains_arc(arc))
                .map(|arc| arc.target)
        };
        let positives: Vec<VarId> = outside_cycle_arcs(Sign::Positive).collect();
        if positives.is_empty() {
            continue;
        }
        let kind = if on_cycle.contains(&u) {
            TripleKind::Internal
        } else {
            TripleKind::External
        };
        for v1 in &positives {
            for v2 in outside_cycle_arcs(Sign::Negative) {
                if *v1 != v2 {
                    triples.push(DelocalizingTriple {
                        pivot: u,
                        positive_target: *v1,
                        negative_target: v2,
                        kind,
                    });
                }
            }
        }
    }
    triples
}

/// A pivot `k` with an all-positive path to `t` and a path to `u` that is
/// positive through single-input mediators and ends with one negative arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InconsistencyWitness {
    pub pivot: VarId,
    pub positive_path: Vec<SignedArc>,
    pub negative_path: Vec<SignedArc>,
    pub positive_end: VarId,
    pub negative_end: VarId,
}

impl InconsistencyWitness {
    /// Number of mediators on the positive path (`r`).
    pub fn positive_mediators(&self) -> usize {
        self.positive_path.len() - 1
    }

    /// Number of mediators on the negative path (`m`).
    pub fn negative_mediators(&self) -> usize {
        self.negative_path.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSearch {
    /// At most one witness per pivot, pivots ascending.
    pub witnesses: Vec<InconsistencyWitness>,
    /// Set when some path was cut off by the length limit.
    pub truncated: bool,
}

impl WitnessSearch {
    pub fn pivots(&self) -> Vec<VarId> {
        self.witnesses.iter().map(|w| w.pivot).collect()
    }
}

/// Shortest admissible path from the pivot to each reachable cycle vertex.
type Endpoints = BTreeMap<VarId, Vec<SignedArc>>;

fn rebuild_path(
    parent: &BTreeMap<VarId, SignedArc>,
    mut at: VarId,
    last: SignedArc,
) -> Vec<SignedArc> {
    let mut path = vec![last];
    while let Some(arc) = parent.get(&at) {
        path.push(*arc);
        at = arc.source;
    }
    path.reverse();
    path
}

/// Breadth-first search from `pivot` along positive arcs through vertices
/// accepted by `mediator`, recording for every admissible endpoint the first
/// (shortest) path whose last arc has sign `last_sign`.
fn endpoint_search(
    graph: &SignedDigraph,
    cycle: &SignedCycle,
    pivot: VarId,
    max_len: usize,
    last_sign: Sign,
    mediator: impl Fn(VarId) -> bool,
) -> (Endpoints, bool) {
    let mut endpoints = Endpoints::new();
    let mut truncated = false;
    let mut parent: BTreeMap<VarId, SignedArc> = BTreeMap::new();
    let mut seen: BTreeSet<VarId> = [pivot].into();
    let mut queue = VecDeque::from([(pivot, 0usize)]);

    // An endpoint is excluded when the direct arc from the pivot to it is an arc of the cycle.
    let allowed_end = |end: VarId| {
        cycle.contains_vertex(end) && !cycle.contains_arc(&SignedArc::new(pivot, end, last_sign))
    };

    while let Some((at, depth)) = queue.pop_front() {
        if depth == max_len {
            if !graph.successors(at).is_empty() {
                truncated = true;
            }
            continue;
        }
        for &(next, sign) in graph.successors(at) {
            let arc = SignedArc::new(at, next, sign);
            // Endpoints found by the positive search are recorded on discovery, and a
            // negative arc into a single-input mediator is impossible, so the only
            // repeat to rule out is a walk back to the pivot other than a self-arc.
            let simple = next != pivot || at == pivot;
            if sign == last_sign && simple && allowed_end(next) && !endpoints.contains_key(&next) {
                endpoints.insert(next, rebuild_path(&parent, at, arc));
            }
            if sign == Sign::Positive && !seen.contains(&next) && mediator(next) {
                seen.insert(next);
                parent.insert(next, arc);
                queue.push_back((next, depth + 1));
            }
        }
    }
    (endpoints, truncated)
}

/// Inconsistency witnesses of `cycle`, at most one per pivot.
///
/// The condition that the direct arcs `k -> t +` and `k -> u -` are not arcs
/// of the cycle is applied whenever such an arc exists, regardless of the
/// path actually used. Mediators on the negative path must have exactly one
/// input arc; positive-path mediators are unrestricted.
pub fn inconsistency_witnesses(
    graph: &SignedDigraph,
    cycle: &SignedCycle,
    max_path_len: usize,
) -> WitnessSearch {
    let mut witnesses = Vec::new();
    let mut truncated = false;
    if cycle.len() < 2 {
        return WitnessSearch {
            witnesses,
            truncated,
        };
    }
    for &pivot in graph.vertices() {
        let (positive, cut_pos) =
            endpoint_search(graph, cycle, pivot, max_path_len, Sign::Positive, |_| true);
        if positive.is_empty() {
            truncated |= cut_pos;
            continue;
        }
        let (negative, cut_neg) =
            endpoint_search(graph, cycle, pivot, max_path_len, Sign::Negative, |v| {
                graph.in_degree(v) == 1
            });
        truncated |= cut_pos || cut_neg;
        let pair = positive
            .iter()
            .flat_map(|(t, p)| negative.iter().map(move |(u, n)| (t, p, u, n)))
            .find(|(t, _, u, _)| t != u);
        if let Some((t, p, u, n)) = pair {
            witnesses.push(InconsistencyWitness {
                pivot,
                positive_path: p.clone(),
                negative_path: n.clone(),
                positive_end: *t,
                negative_end: *u,
            });
        }
    }
    WitnessSearch {
        witnesses,
        truncated,
    }
}

/// Classification of one cycle of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleRecord {
    pub cycle: SignedCycle,
    pub parity: Parity,
    pub triples: Vec<DelocalizingTriple>,
    pub witnesses: Vec<InconsistencyWitness>,
    pub witnesses_truncated: bool,
}

impl CycleRecord {
    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    pub fn is_strong(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn is_consistent(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = VarId> + '_ {
        self.witnesses.iter().map(|w| w.pivot)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleClassification {
    pub records: Vec<CycleRecord>,
    /// Cycle enumeration hit its budget; the record list is incomplete.
    pub truncated: bool,
    /// Some witness search was cut off by the path-length limit.
    pub witnesses_truncated: bool,
}

impl CycleClassification {
    pub fn even(&self) -> impl Iterator<Item = &CycleRecord> {
        self.records.iter().filter(|r| r.is_even())
    }

    pub fn strong_even_count(&self) -> usize {
        self.even().filter(|r| r.is_strong()).count()
    }

    pub fn consistent_even_count(&self) -> usize {
        self.even().filter(|r| r.is_consistent()).count()
    }

    pub fn to_json(&self, names: &[String]) -> CycleReportJson {
        let name = |v: VarId| names[v.0].clone();
        let path = |arcs: &[SignedArc]| {
            std::iter::once(name(arcs[0].source))
                .chain(arcs.iter().map(|a| name(a.target)))
                .collect::<Vec<_>>()
        };
        let cycles = self
            .records
            .iter()
            .map(|r| CycleJson {
                vertices: r.cycle.vertices().into_iter().map(name).collect(),
                signs: r.cycle.signs(),
                parity: r.parity,
                strong: r.is_strong(),
                consistent: r.is_consistent(),
                triples: r
                    .triples
                    .iter()
                    .map(|t| TripleJson {
                        pivot: name(t.pivot),
                        positive_target: name(t.positive_target),
                        negative_target: name(t.negative_target),
                        kind: t.kind,
                    })
                    .collect(),
                pivots: r.pivots().map(name).collect(),
                witnesses: r
                    .witnesses
                    .iter()
                    .map(|w| WitnessJson {
                        pivot: name(w.pivot),
                        positive_path: path(&w.positive_path),
                        negative_path: path(&w.negative_path),
                    })
                    .collect(),
            })
            .collect();
        CycleReportJson {
            cycles,
            truncated: self.truncated,
        }
    }
}

/// Options for [`classify_cycles`].
#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub max_cycles: usize,
    /// Longest path, in arcs, explored by the witness search; `None` means
    /// the number of vertices.
    pub max_path_len: Option<usize>,
    pub execution: Execution,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            max_cycles: super::DEFAULT_MAX_CYCLES,
            max_path_len: None,
            execution: Execution::default(),
        }
    }
}

/// Enumerates and classifies every cycle of `graph`.
pub fn classify_cycles(graph: &SignedDigraph, options: ClassifyOptions) -> CycleClassification {
    let enumeration = enumerate_cycles(graph, options.max_cycles);
    let max_len = options.max_path_len.unwrap_or(graph.vertices().len());
    let records = options.execution.map_slice(&enumeration.cycles, |cycle| {
        let triples = delocalizing_triples(graph, cycle);
        let search = inconsistency_witnesses(graph, cycle, max_len);
        let record = CycleRecord {
            cycle: cycle.clone(),
            parity: cycle.parity(),
            triples,
            witnesses: search.witnesses,
            witnesses_truncated: search.truncated,
        };
        // A triple is itself a witness with no mediators, so consistent cycles are strong.
        assert!(
            !record.is_consistent() || record.is_strong(),
            "consistent cycle with a delocalizing triple"
        );
        record
    });
    let witnesses_truncated = records.iter().any(|r| r.witnesses_truncated);
    CycleClassification {
        records,
        truncated: enumeration.truncated,
        witnesses_truncated,
    }
}

/// A state whose local influence graph contains every arc of `cycle`, if any.
pub fn is_local_cycle(
    network: &BooleanNetwork,
    cycle: &SignedCycle,
    cap: usize,
    exec: Execution,
) -> Result<Option<NetworkState>> {
    check_state_cap(network.len(), cap)?;
    let compiled = CompiledNetwork::new(network);
    let arcs = cycle.arcs();
    let witness = exec.find_first(0..1u64 << network.len(), |state| {
        arcs.iter().all(|a| {
            let low = compiled.eval(a.target.0, state & !(1 << a.source.0));
            let high = compiled.eval(a.target.0, state | (1 << a.source.0));
            match a.sign {
                Sign::Positive => !low && high,
                Sign::Negative => low && !high,
            }
        })
    });
    Ok(witness.map(|index| NetworkState::from_index(index, network.len())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReportJson {
    pub cycles: Vec<CycleJson>,
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleJson {
    pub vertices: Vec<String>,
    pub signs: Vec<Sign>,
    pub parity: Parity,
    pub strong: bool,
    pub consistent: bool,
    pub triples: Vec<TripleJson>,
    pub pivots: Vec<String>,
    pub witnesses: Vec<WitnessJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleJson {
    pub pivot: String,
    pub positive_target: String,
    pub negative_target: String,
    pub kind: TripleKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub pivot: String,
    pub positive_path: Vec<String>,
    pub negative_path: Vec<String>,
}
