//! Simple cycles of signed digraphs and their classification.

mod classify;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::influence::{SignedArc, SignedDigraph};
use crate::network::{Sign, VarId};

pub use classify::{
    classify_cycles, delocalizing_triples, inconsistency_witnesses, is_local_cycle,
    ClassifyOptions, CycleClassification, CycleJson, CycleRecord, CycleReportJson,
    DelocalizingTriple, InconsistencyWitness, TripleKind, WitnessSearch,
};

/// Default cap on the number of enumerated cycles.
pub const DEFAULT_MAX_CYCLES: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A simple directed cycle, stored as arcs starting at its minimum vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedCycle {
    arcs: Vec<SignedArc>,
}

impl SignedCycle {
    /// Builds a cycle from chained arcs, rotating it to start at the minimum
    /// vertex. Returns `None` unless the arcs form one simple closed walk.
    pub fn from_arcs(mut arcs: Vec<SignedArc>) -> Option<Self> {
        if arcs.is_empty() {
            return None;
        }
        let len = arcs.len();
        for k in 0..len {
            if arcs[k].target != arcs[(k + 1) % len].source {
                return None;
            }
        }
        let distinct: BTreeSet<VarId> = arcs.iter().map(|a| a.source).collect();
        if distinct.len() != len {
            return None;
        }
        let start = (0..len).min_by_key(|&k| arcs[k].source).expect("non-empty");
        arcs.rotate_left(start);
        Some(SignedCycle { arcs })
    }

    /// Cycle through `vertices` (in order, closing back to the first) with the given arc signs.
    pub fn from_vertices(vertices: &[VarId], signs: &[Sign]) -> Option<Self> {
        if vertices.len() != signs.len() {
            return None;
        }
        let n = vertices.len();
        let arcs = (0..n)
            .map(|k| SignedArc::new(vertices[k], vertices[(k + 1) % n], signs[k]))
            .collect();
        SignedCycle::from_arcs(arcs)
    }

    pub fn arcs(&self) -> &[SignedArc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Vertex sequence in canonical rotation.
    pub fn vertices(&self) -> Vec<VarId> {
        self.arcs.iter().map(|a| a.source).collect()
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.arcs.iter().map(|a| a.sign).collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<VarId> {
        self.arcs.iter().map(|a| a.source).collect()
    }

    pub fn contains_vertex(&self, v: VarId) -> bool {
        self.arcs.iter().any(|a| a.source == v)
    }

    pub fn contains_arc(&self, arc: &SignedArc) -> bool {
        self.arcs.contains(arc)
    }

    pub fn negative_arcs(&self) -> usize {
        self.arcs
            .iter()
            .filter(|a| a.sign == Sign::Negative)
            .count()
    }

    pub fn parity(&self) -> Parity {
        cycle_parity(self)
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// Renders as `a ---> b -+-> a`, the sign sitting inside each arrow.
    pub fn display<'a>(&'a self, names: &'a [String]) -> CycleDisplay<'a> {
        CycleDisplay { cycle: self, names }
    }
}

pub struct CycleDisplay<'a> {
    cycle: &'a SignedCycle,
    names: &'a [String],
}

impl fmt::Display for CycleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs = self.cycle.arcs();
        write!(f, "{}", self.names[arcs[0].source.0])?;
        for a in arcs {
            write!(f, " -{}-> {}", a.sign, self.names[a.target.0])?;
        }
        Ok(())
    }
}

/// Even iff the number of negative arcs is even.
pub fn cycle_parity(cycle: &SignedCycle) -> Parity {
    if cycle.negative_arcs().is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Result of [`enumerate_cycles`]. `truncated` is set when the graph has more
/// than the requested number of cycles; `cycles` then holds a partial list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleEnumeration {
    pub cycles: Vec<SignedCycle>,
    pub truncated: bool,
}

/// Enumerates all simple cycles (self-loops included) in canonical rotation,
/// sorted by vertex sequence and then by signs.
///
/// Vertex cycles are found with Johnson's blocking search on the unsigned
/// skeleton, restricted for each start vertex `s` to the vertices `>= s`, so
/// every cycle is emitted exactly once starting at its minimum vertex. Each
/// vertex cycle is then expanded over the signs of the parallel arcs.
pub fn enumerate_cycles(graph: &SignedDigraph, max_cycles: usize) -> CycleEnumeration {
    let mut search = Johnson::new(graph, max_cycles);
    for &start in graph.vertices() {
        if search.stopped {
            break;
        }
        search.run_from(start);
    }
    let mut cycles = search.found;
    cycles.sort_by(|a, b| {
        a.vertices()
            .cmp(&b.vertices())
            .then_with(|| a.signs().cmp(&b.signs()))
    });
    CycleEnumeration {
        cycles,
        truncated: search.stopped,
    }
}

struct Johnson<'g> {
    graph: &'g SignedDigraph,
    /// Distinct successors per vertex (signs collapsed).
    skeleton: Vec<Vec<usize>>,
    blocked: Vec<bool>,
    blocked_by: Vec<Vec<usize>>,
    stack: Vec<usize>,
    start: usize,
    found: Vec<SignedCycle>,
    limit: usize,
    stopped: bool,
}

impl<'g> Johnson<'g> {
    fn new(graph: &'g SignedDigraph, limit: usize) -> Self {
        let n = graph.universe_len();
        let skeleton = (0..n)
            .map(|v| {
                let mut targets: Vec<usize> = graph
                    .successors(VarId(v))
                    .iter()
                    .map(|(t, _)| t.0)
                    .collect();
                targets.dedup();
                targets
            })
            .collect();
        Johnson {
            graph,
            skeleton,
            blocked: vec![false; n],
            blocked_by: vec![Vec::new(); n],
            stack: Vec::new(),
            start: 0,
            found: Vec::new(),
            limit,
            stopped: false,
        }
    }

    fn run_from(&mut self, start: VarId) {
        self.start = start.0;
        for v in self.graph.vertices().range(start..) {
            self.blocked[v.0] = false;
            self.blocked_by[v.0].clear();
        }
        self.circuit(start.0);
    }

    fn unblock(&mut self, v: usize) {
        let mut pending = vec![v];
        while let Some(u) = pending.pop() {
            if !self.blocked[u] {
                continue;
            }
            self.blocked[u] = false;
            pending.append(&mut self.blocked_by[u]);
        }
    }

    fn circuit(&mut self, v: usize) -> bool {
        let mut closed = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for k in 0..self.skeleton[v].len() {
            if self.stopped {
                break;
            }
            let w = self.skeleton[v][k];
            if w < self.start {
                continue;
            }
            if w == self.start {
                self.emit();
                closed = true;
            } else if !self.blocked[w] && self.circuit(w) {
                closed = true;
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for k in 0..self.skeleton[v].len() {
                let w = self.skeleton[v][k];
                if w >= self.start && !self.blocked_by[w].contains(&v) {
                    self.blocked_by[w].push(v);
                }
            }
        }
        self.stack.pop();
        closed
    }

    /// Expands the vertex cycle on the stack over all sign choices.
    fn emit(&mut self) {
        let vertices: Vec<VarId> = self.stack.iter().map(|&v| VarId(v)).collect();
        let n = vertices.len();
        let choices: Vec<Vec<Sign>> = (0..n)
            .map(|k| {
                let (from, to) = (vertices[k], vertices[(k + 1) % n]);
                self.graph
                    .successors(from)
                    .iter()
                    .filter(|(t, _)| *t == to)
                    .map(|&(_, s)| s)
                    .collect()
            })
            .collect();
        let mut pick = vec![0usize; n];
        loop {
            if self.found.len() == self.limit {
                self.stopped = true;
                return;
            }
            let signs: Vec<Sign> = (0..n).map(|k| choices[k][pick[k]]).collect();
            self.found.push(
                SignedCycle::from_vertices(&vertices, &signs).expect("stack holds a simple cycle"),
            );
            // Odometer over sign choices.
            let mut k = n;
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
            }
        }
    }
}
