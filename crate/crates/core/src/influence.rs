//! Signed influence graphs.
//!
//! For an AND-NOT network the global influence graph can be read off the
//! literals directly ([`structural_global_ig`]). The definitional union of
//! local graphs over all states ([`bruteforce_global_ig`]) is exponential and
//! exists to check the structural construction.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{check_state_cap, Error, Result};
use crate::exec::Execution;
use crate::network::{BooleanNetwork, CompiledNetwork, NetworkState, Sign, UpdateFunction, VarId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedArc {
    pub source: VarId,
    pub target: VarId,
    pub sign: Sign,
}

impl SignedArc {
    pub fn new(source: VarId, target: VarId, sign: Sign) -> Self {
        SignedArc {
            source,
            target,
            sign,
        }
    }
}

/// A signed digraph over a subset of a network's variables.
///
/// `names` covers the whole variable universe so that induced subgraphs keep
/// the original variable indices. Self-arcs are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedDigraph {
    names: Vec<String>,
    vertices: BTreeSet<VarId>,
    arcs: BTreeSet<SignedArc>,
    successors: Vec<Vec<(VarId, Sign)>>,
    predecessors: Vec<Vec<(VarId, Sign)>>,
}

impl SignedDigraph {
    pub fn new(
        names: Vec<String>,
        vertices: BTreeSet<VarId>,
        arcs: impl IntoIterator<Item = SignedArc>,
    ) -> Result<Self> {
        let arcs: BTreeSet<SignedArc> = arcs.into_iter().collect();
        if let Some(v) = vertices.iter().find(|v| v.0 >= names.len()) {
            return Err(Error::VertexOutOfRange {
                vertex: v.0,
                universe: names.len(),
            });
        }
        if let Some(arc) = arcs
            .iter()
            .find(|a| !vertices.contains(&a.source) || !vertices.contains(&a.target))
        {
            return Err(Error::ArcOutsideVertexSet {
                from: arc.source.0,
                to: arc.target.0,
            });
        }
        let mut successors = vec![Vec::new(); names.len()];
        let mut predecessors = vec![Vec::new(); names.len()];
        for arc in &arcs {
            successors[arc.source.0].push((arc.target, arc.sign));
            predecessors[arc.target.0].push((arc.source, arc.sign));
        }
        Ok(SignedDigraph {
            names,
            vertices,
            arcs,
            successors,
            predecessors,
        })
    }

    /// Graph on vertices `0..n` named `v0, v1, ...`.
    pub fn anonymous(n: usize, arcs: impl IntoIterator<Item = SignedArc>) -> Result<Self> {
        let names = (0..n).map(|i| format!("v{i}")).collect();
        SignedDigraph::new(names, (0..n).map(VarId).collect(), arcs)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.names[v.0]
    }

    pub fn universe_len(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> &BTreeSet<VarId> {
        &self.vertices
    }

    pub fn arcs(&self) -> &BTreeSet<SignedArc> {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn contains(&self, arc: &SignedArc) -> bool {
        self.arcs.contains(arc)
    }

    pub fn has_arc(&self, source: VarId, target: VarId, sign: Sign) -> bool {
        self.arcs.contains(&SignedArc::new(source, target, sign))
    }

    /// Outgoing `(target, sign)` pairs in ascending order.
    pub fn successors(&self, v: VarId) -> &[(VarId, Sign)] {
        &self.successors[v.0]
    }

    /// Incoming `(source, sign)` pairs in ascending order.
    pub fn predecessors(&self, v: VarId) -> &[(VarId, Sign)] {
        &self.predecessors[v.0]
    }

    /// Number of input arcs of `v`.
    pub fn in_degree(&self, v: VarId) -> usize {
        self.predecessors[v.0].len()
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self
                .vertices
                .iter()
                .map(|&v| self.name(v).to_string())
                .collect(),
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcJson {
                    from: self.name(a.source).to_string(),
                    to: self.name(a.target).to_string(),
                    sign: a.sign,
                })
                .collect(),
        }
    }

    /// One `u -> v +` / `u -> v -` line per arc.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for a in &self.arcs {
            let _ = writeln!(
                out,
                "{} -> {} {}",
                self.name(a.source),
                self.name(a.target),
                a.sign
            );
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub arcs: Vec<ArcJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcJson {
    pub from: String,
    pub to: String,
    pub sign: Sign,
}

/// Global influence graph read off the literals: `(u, +)` in `f_v` gives
/// `u -> v +`, `(u, -)` gives `u -> v -`; constants have no inputs.
pub fn structural_global_ig(network: &BooleanNetwork) -> SignedDigraph {
    let arcs = network.variables().flat_map(|v| {
        network
            .function(v)
            .literals()
            .iter()
            .map(move |l| SignedArc::new(l.var, v, l.sign))
    });
    SignedDigraph::new(
        network.names().to_vec(),
        network.variables().collect(),
        arcs,
    )
    .expect("literals reference declared variables")
}

/// Local influence graph at `state`: `u -> v +` iff raising `u` raises `f_v`,
/// `u -> v -` iff raising `u` lowers `f_v`.
pub fn local_ig(network: &BooleanNetwork, state: &NetworkState) -> SignedDigraph {
    assert_eq!(
        state.len(),
        network.len(),
        "state length must match the network"
    );
    let mut arcs = Vec::new();
    for target in network.variables() {
        let function = network.function(target);
        if let UpdateFunction::Constant(_) = function {
            continue;
        }
        for source in network.variables() {
            let low = function.evaluate(&state.with(source, false));
            let high = function.evaluate(&state.with(source, true));
            match (low, high) {
                (false, true) => arcs.push(SignedArc::new(source, target, Sign::Positive)),
                (true, false) => arcs.push(SignedArc::new(source, target, Sign::Negative)),
                _ => {}
            }
        }
    }
    SignedDigraph::new(
        network.names().to_vec(),
        network.variables().collect(),
        arcs,
    )
    .expect("arcs connect declared variables")
}

/// Arc flags of the local graph at a state index, as `2 * (source * n + target) + sign`.
fn local_arc_flags(compiled: &CompiledNetwork, state: u64, flags: &mut [bool]) {
    let n = compiled.len();
    for target in 0..n {
        for source in 0..n {
            let low = compiled.eval(target, state & !(1 << source));
            let high = compiled.eval(target, state | (1 << source));
            if low != high {
                let slot = 2 * (source * n + target) + usize::from(low);
                flags[slot] = true;
            }
        }
    }
}

/// Union of the local influence graphs over all `2^n` states.
pub fn bruteforce_global_ig(
    network: &BooleanNetwork,
    cap: usize,
    exec: Execution,
) -> Result<SignedDigraph> {
    check_state_cap(network.len(), cap)?;
    let n = network.len();
    let compiled = CompiledNetwork::new(network);
    let flags = exec.fold_range(
        0..1u64 << n,
        || vec![false; 2 * n * n],
        |mut acc, state| {
            local_arc_flags(&compiled, state, &mut acc);
            acc
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
            a
        },
    );
    let arcs = flags
        .iter()
        .enumerate()
        .filter(|(_, &set)| set)
        .map(|(slot, _)| {
            let sign = if slot % 2 == 0 {
                Sign::Positive
            } else {
                Sign::Negative
            };
            let pair = slot / 2;
            SignedArc::new(VarId(pair / n), VarId(pair % n), sign)
        });
    SignedDigraph::new(
        network.names().to_vec(),
        network.variables().collect(),
        arcs,
    )
}

/// `G[B]`: vertices `b`, arcs with both endpoints in `b`.
pub fn induced_subgraph(graph: &SignedDigraph, b: &BTreeSet<VarId>) -> SignedDigraph {
    let vertices: BTreeSet<VarId> = b.intersection(graph.vertices()).copied().collect();
    let arcs = graph
        .arcs()
        .iter()
        .filter(|a| vertices.contains(&a.source) && vertices.contains(&a.target))
        .copied()
        .collect::<Vec<_>>();
    SignedDigraph::new(graph.names().to_vec(), vertices, arcs)
        .expect("arcs restricted to vertex set")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::parse_network;

    const CYCLIC3: &str = "a, !b & c\nb, !a & !c\nc, !a";
    const PIVOT4: &str = "a, b & d\nb, a & !c\nc, d\nd, !c & d";

    fn edge_set(g: &SignedDigraph) -> Vec<String> {
        g.to_edge_list().lines().map(str::to_string).collect()
    }

    #[test]
    fn structural_ig_of_three_variable_example() {
        let g = structural_global_ig(&parse_network(CYCLIC3).unwrap());
        assert_eq!(
            edge_set(&g),
            ["a -> b -", "a -> c -", "b -> a -", "c -> a +", "c -> b -"]
        );
    }

    #[test]
    fn structural_ig_of_four_variable_example() {
        let g = structural_global_ig(&parse_network(PIVOT4).unwrap());
        assert_eq!(
            edge_set(&g),
            ["a -> b +", "b -> a +", "c -> b -", "c -> d -", "d -> a +", "d -> c +", "d -> d +"]
        );
        assert_eq!(g.in_degree(VarId(2)), 1);
    }

    #[test]
    fn constants_have_no_arcs() {
        let g = structural_global_ig(&parse_network("a, 1\nb, 0").unwrap());
        assert_eq!(g.arc_count(), 0);
        assert_eq!(g.vertices().len(), 2);
    }

    #[test]
    fn local_ig_at_all_ones_matches_hand_table() {
        // Direct evaluation of the 9 ordered pairs at x = 111.
        let f = parse_network(CYCLIC3).unwrap();
        let g = local_ig(&f, &"111".parse().unwrap());
        assert_eq!(edge_set(&g), ["a -> c -", "b -> a -"]);
        let g = local_ig(&f, &"000".parse().unwrap());
        assert_eq!(
            edge_set(&g),
            ["a -> b -", "a -> c -", "c -> a +", "c -> b -"]
        );
        let g = local_ig(&f, &"110".parse().unwrap());
        assert_eq!(edge_set(&g), ["a -> b -", "a -> c -"]);
    }

    #[test]
    fn local_ig_edge_cases() {
        let f = parse_network("u, 1\nv, u").unwrap();
        for index in 0..4 {
            let g = local_ig(&f, &NetworkState::from_index(index, 2));
            assert_eq!(edge_set(&g), ["u -> v +"]);
        }
    }

    #[test]
    fn bruteforce_matches_structural_on_examples() {
        for text in [CYCLIC3, PIVOT4, "a, a"] {
            let f = parse_network(text).unwrap();
            for exec in [Execution::Sequential, Execution::Parallel] {
                assert_eq!(
                    bruteforce_global_ig(&f, 20, exec).unwrap(),
                    structural_global_ig(&f)
                );
            }
        }
        let single =
            bruteforce_global_ig(&parse_network("a, a").unwrap(), 20, Execution::Sequential)
                .unwrap();
        assert_eq!(edge_set(&single), ["a -> a +"]);
    }

    #[test]
    fn bruteforce_respects_cap() {
        let f = parse_network(CYCLIC3).unwrap();
        assert_eq!(
            bruteforce_global_ig(&f, 2, Execution::Sequential),
            Err(Error::StateSpaceTooLarge {
                variables: 3,
                cap: 2
            })
        );
    }

    #[test]
    fn induced_subgraph_restricts_arcs() {
        let g = structural_global_ig(&parse_network(CYCLIC3).unwrap());
        let ab = induced_subgraph(&g, &[VarId(0), VarId(1)].into());
        assert_eq!(edge_set(&ab), ["a -> b -", "b -> a -"]);
        assert_eq!(induced_subgraph(&g, g.vertices()), g);
        let empty = induced_subgraph(&g, &BTreeSet::new());
        assert!(empty.vertices().is_empty() && empty.arcs().is_empty());
    }

    #[test]
    fn json_export() {
        let g = structural_global_ig(&parse_network("a, !b\nb, a").unwrap());
        let json = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"vertices":["a","b"],"arcs":[{"from":"a","to":"b","sign":"+"},{"from":"b","to":"a","sign":"-"}]}"#
        );
    }

    #[test]
    fn construction_validates_endpoints() {
        let arc = SignedArc::new(VarId(0), VarId(1), Sign::Positive);
        let err = SignedDigraph::new(vec!["a".into(), "b".into()], [VarId(0)].into(), [arc]);
        assert!(matches!(err, Err(Error::ArcOutsideVertexSet { .. })));
    }
}
