//! The end-to-end analysis and its JSON and text renderings.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::covers::{
    build_constraints, min_hitting_set, FamilyKind, SolverMode, SolverOptions, WitnessSet,
};
use crate::cycles::{classify_cycles, ClassifyOptions, CycleJson, Parity, DEFAULT_MAX_CYCLES};
use crate::dynamics::{attractors, fixed_points};
use crate::exec::Execution;
use crate::influence::structural_global_ig;
use crate::network::{BooleanNetwork, VarId};
use crate::DEFAULT_STATE_CAP;

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    /// Run the exhaustive attractor oracle when the network fits under `state_cap`.
    pub verify: bool,
    pub state_cap: usize,
    pub max_cycles: usize,
    /// Longest inconsistency path searched; `None` means the vertex count.
    pub max_path_len: Option<usize>,
    pub solver: SolverOptions,
    pub execution: Execution,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            verify: false,
            state_cap: DEFAULT_STATE_CAP,
            max_cycles: DEFAULT_MAX_CYCLES,
            max_path_len: None,
            solver: SolverOptions::default(),
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub network: NetworkSummary,
    pub cycles: CycleStats,
    pub cycle_list: Vec<CycleJson>,
    pub witnesses: WitnessSets,
    /// Upper bound on fixed points from the dominating set.
    pub fixed_point_bound: Option<u128>,
    pub oracle: Option<OracleResult>,
    pub verdicts: Verdicts,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkSummary {
    pub variables: usize,
    pub constants: usize,
    pub influence_arcs: usize,
    pub functions: Vec<FunctionEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionEntry {
    pub target: String,
    pub function: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleStats {
    pub total: usize,
    pub even: usize,
    pub odd: usize,
    pub strong_even: usize,
    pub consistent_even: usize,
    /// Enumeration stopped at the cycle limit.
    pub truncated: bool,
    /// Some inconsistency path search hit the length limit.
    pub witness_paths_truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSets {
    pub even_fvs: WitnessReport,
    pub strong_even: WitnessReport,
    pub dominating: WitnessReport,
}

impl WitnessSets {
    pub fn get(&self, kind: FamilyKind) -> &WitnessReport {
        match kind {
            FamilyKind::EvenFvs => &self.even_fvs,
            FamilyKind::StrongEven => &self.strong_even,
            FamilyKind::Dominating => &self.dominating,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub members: Vec<String>,
    pub size: usize,
    /// `2^size`, absent when it does not fit in 128 bits.
    pub bound: Option<u128>,
    pub constraints: usize,
    /// Built from a complete cycle enumeration, so the bound is proven.
    pub certified: bool,
    /// No smaller set satisfies the constraints.
    pub minimal: bool,
    pub method: SolverMode,
    pub budget_exceeded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub attractors: usize,
    pub fixed_points: usize,
    pub attractor_states: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Present only when the oracle ran and the corresponding bound is certified.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub even_fvs: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strong_even: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dominating: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_points: Option<Verdict>,
}

impl Verdicts {
    pub fn any_failed(&self) -> bool {
        [
            self.even_fvs,
            self.strong_even,
            self.dominating,
            self.fixed_points,
        ]
        .contains(&Some(Verdict::Fail))
    }
}

impl BoundReport {
    /// Exit-code relevant: some verdict contradicts the oracle.
    pub fn has_violation(&self) -> bool {
        self.verdicts.any_failed()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn bound(size: usize) -> Option<u128> {
    u32::try_from(size).ok().and_then(|s| 1u128.checked_shl(s))
}

fn verdict(bound: Option<u128>, count: usize) -> Verdict {
    match bound {
        Some(b) if (count as u128) > b => Verdict::Fail,
        _ => Verdict::Pass,
    }
}

/// Runs the full pipeline. Budget overruns and oversized state spaces end up
/// in `flags` instead of failing the analysis.
pub fn analyze(network: &BooleanNetwork, options: AnalyzeOptions) -> BoundReport {
    let names = network.names();
    let name = |v: &VarId| names[v.0].clone();
    let graph = structural_global_ig(network);
    let classification = classify_cycles(
        &graph,
        ClassifyOptions {
            max_cycles: options.max_cycles,
            max_path_len: options.max_path_len,
            execution: options.execution,
        },
    );
    let mut flags = Vec::new();
    if classification.truncated {
        flags.push(format!(
            "cycle enumeration truncated at {} cycles; bounds uncertified",
            options.max_cycles
        ));
    }
    if classification.witnesses_truncated {
        flags.push(
            "inconsistency path search truncated; dominating set may not be minimal".to_string(),
        );
    }

    let witness = |kind: FamilyKind, flags: &mut Vec<String>| {
        let family = build_constraints(&classification, kind);
        let set: WitnessSet = min_hitting_set(&family, options.solver);
        if set.budget_exceeded {
            flags.push(format!(
                "{} solver budget exceeded; greedy set used",
                label(kind)
            ));
        }
        WitnessReport {
            members: set.members.iter().map(name).collect(),
            size: set.len(),
            bound: bound(set.len()),
            constraints: family.len(),
            certified: family.is_certified(),
            minimal: set.certified_minimal,
            method: set.method,
            budget_exceeded: set.budget_exceeded,
        }
    };
    let witnesses = WitnessSets {
        even_fvs: witness(FamilyKind::EvenFvs, &mut flags),
        strong_even: witness(FamilyKind::StrongEven, &mut flags),
        dominating: witness(FamilyKind::Dominating, &mut flags),
    };

    let oracle = if options.verify {
        let attractor_set = attractors(network, options.state_cap, options.execution);
        let fixed = fixed_points(network, options.state_cap, options.execution);
        match (attractor_set, fixed) {
            (Ok(set), Ok(fixed)) => Some(OracleResult {
                attractors: set.len(),
                fixed_points: fixed.len(),
                attractor_states: set.rendered(),
            }),
            (Err(e), _) | (_, Err(e)) => {
                flags.push(format!("oracle skipped: {e}"));
                None
            }
        }
    } else {
        None
    };

    let mut verdicts = Verdicts::default();
    if let Some(oracle) = &oracle {
        let check = |w: &WitnessReport, count: usize| w.certified.then(|| verdict(w.bound, count));
        verdicts.even_fvs = check(&witnesses.even_fvs, oracle.attractors);
        verdicts.strong_even = check(&witnesses.strong_even, oracle.attractors);
        verdicts.dominating = check(&witnesses.dominating, oracle.attractors);
        verdicts.fixed_points = check(&witnesses.dominating, oracle.fixed_points);
    }

    let even = classification.even().count();
    BoundReport {
        network: NetworkSummary {
            variables: network.len(),
            constants: network.constant_count(),
            influence_arcs: graph.arc_count(),
            functions: network
                .variables()
                .map(|v| FunctionEntry {
                    target: name(&v),
                    function: network.function_text(v),
                })
                .collect(),
        },
        cycles: CycleStats {
            total: classification.records.len(),
            even,
            odd: classification.records.len() - even,
            strong_even: classification.strong_even_count(),
            consistent_even: classification.consistent_even_count(),
            truncated: classification.truncated,
            witness_paths_truncated: classification.witnesses_truncated,
        },
        cycle_list: classification.to_json(names).cycles,
        fixed_point_bound: witnesses.dominating.bound,
        witnesses,
        oracle,
        verdicts,
        flags,
    }
}

fn label(kind: FamilyKind) -> &'static str {
    match kind {
        FamilyKind::EvenFvs => "even FVS",
        FamilyKind::StrongEven => "strong even",
        FamilyKind::Dominating => "dominating",
    }
}

fn render_bound(b: Option<u128>, size: usize) -> String {
    match b {
        Some(b) => format!("2^{size} = {b}"),
        None => format!("2^{size}"),
    }
}

/// Human-readable report: cycles with their triples and witnesses, then bounds.
pub fn render_text(report: &BoundReport) -> String {
    let mut out = String::new();
    let n = &report.network;
    let _ = writeln!(
        out,
        "network: {} variables, {} constants",
        n.variables, n.constants
    );
    for f in &n.functions {
        let _ = writeln!(out, "  {} = {}", f.target, f.function);
    }
    let c = &report.cycles;
    let _ = writeln!(out, "influence graph: {} arcs", n.influence_arcs);
    let _ = writeln!(
        out,
        "cycles: {} total, {} even, {} odd, {} strong even, {} consistent even{}",
        c.total,
        c.even,
        c.odd,
        c.strong_even,
        c.consistent_even,
        if c.truncated { " (truncated)" } else { "" }
    );
    for (i, cycle) in report.cycle_list.iter().enumerate() {
        let mut path = String::new();
        for (v, s) in cycle.vertices.iter().zip(&cycle.signs) {
            let _ = write!(path, "{v} -{}-> ", s.symbol());
        }
        path.push_str(&cycle.vertices[0]);
        let parity = match cycle.parity {
            Parity::Even => "even",
            Parity::Odd => "odd",
        };
        let strength = if cycle.strong { "strong" } else { "not strong" };
        let consistency = if cycle.consistent {
            "consistent"
        } else {
            "inconsistent"
        };
        let _ = writeln!(
            out,
            "  C{} {parity}, {strength}, {consistency}: {path}",
            i + 1
        );
        for t in &cycle.triples {
            let _ = writeln!(
                out,
                "    triple ({}, {}, {}) {}",
                t.pivot,
                t.positive_target,
                t.negative_target,
                match t.kind {
                    crate::cycles::TripleKind::Internal => "internal",
                    crate::cycles::TripleKind::External => "external",
                }
            );
        }
        for w in &cycle.witnesses {
            let _ = writeln!(
                out,
                "    pivot {}: positive {} ; negative {}",
                w.pivot,
                w.positive_path.join(" -> "),
                w.negative_path.join(" -> ")
            );
        }
    }
    let _ = writeln!(out, "bounds:");
    for kind in FamilyKind::ALL {
        let w = report.witnesses.get(kind);
        let mut notes = vec![format!("{:?}", w.method).to_lowercase()];
        if !w.certified {
            notes.push("uncertified".into());
        }
        if !w.minimal {
            notes.push("not minimal".into());
        }
        let _ = writeln!(
            out,
            "  {:<12} {{{}}}  {}  ({})",
            label(kind),
            w.members.join(", "),
            render_bound(w.bound, w.size),
            notes.join(", ")
        );
    }
    if let Some(b) = report.fixed_point_bound {
        let _ = writeln!(out, "  fixed points at most {b}");
    }
    if let Some(o) = &report.oracle {
        let _ = writeln!(
            out,
            "oracle: attractors {}, fixed points {}",
            o.attractors, o.fixed_points
        );
        for states in &o.attractor_states {
            let _ = writeln!(out, "  {{{}}}", states.join(", "));
        }
    }
    let v = &report.verdicts;
    let verdict_lines: Vec<String> = [
        ("even FVS", v.even_fvs),
        ("strong even", v.strong_even),
        ("dominating", v.dominating),
        ("fixed points", v.fixed_points),
    ]
    .into_iter()
    .filter_map(|(l, v)| {
        v.map(|v| format!("{l} {}", if v == Verdict::Pass { "PASS" } else { "FAIL" }))
    })
    .collect();
    if !verdict_lines.is_empty() {
        let _ = writeln!(out, "verdicts: {}", verdict_lines.join(", "));
    }
    for flag in &report.flags {
        let _ = writeln!(out, "note: {flag}");
    }
    out
}

/// Witness set members of `kind` as variable ids, for callers holding the network.
pub fn witness_members(
    report: &BoundReport,
    network: &BooleanNetwork,
    kind: FamilyKind,
) -> BTreeSet<VarId> {
    report
        .witnesses
        .get(kind)
        .members
        .iter()
        .filter_map(|m| network.find(m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::parse_network;

    const CYCLIC3: &str = "a, !b & c\nb, !a & !c\nc, !a";
    const PIVOT4: &str = "a, b & d\nb, a & !c\nc, d\nd, !c & d";

    fn verified(text: &str) -> BoundReport {
        analyze(
            &parse_network(text).unwrap(),
            AnalyzeOptions {
                verify: true,
                ..Default::default()
            },
        )
    }

    #[test]
    fn three_variable_example_report() {
        let r = verified(CYCLIC3);
        assert_eq!(r.witnesses.even_fvs.bound, Some(2));
        assert_eq!(r.witnesses.strong_even.bound, Some(1));
        assert_eq!(r.witnesses.dominating.bound, Some(1));
        assert_eq!(r.witnesses.even_fvs.members, ["a"]);
        let oracle = r.oracle.as_ref().unwrap();
        assert_eq!((oracle.attractors, oracle.fixed_points), (1, 0));
        assert_eq!(r.verdicts.dominating, Some(Verdict::Pass));
        assert!(!r.has_violation());
        assert_eq!(
            (r.cycles.total, r.cycles.even, r.cycles.strong_even),
            (3, 1, 0)
        );
    }

    #[test]
    fn four_variable_example_report() {
        let r = verified(PIVOT4);
        assert_eq!(r.witnesses.strong_even.members, ["a", "d"]);
        assert_eq!(r.witnesses.strong_even.bound, Some(4));
        assert_eq!(r.witnesses.dominating.members, ["d"]);
        assert_eq!(r.witnesses.dominating.bound, Some(2));
        assert_eq!(r.fixed_point_bound, Some(2));
        assert_eq!(r.oracle.as_ref().unwrap().attractor_states, [vec!["0000"]]);
        assert_eq!(r.cycle_list[0].pivots, ["d"]);
        assert_eq!(r.verdicts.fixed_points, Some(Verdict::Pass));
    }

    #[test]
    fn no_verdicts_without_oracle() {
        let r = analyze(&parse_network(PIVOT4).unwrap(), AnalyzeOptions::default());
        assert!(r.oracle.is_none());
        assert_eq!(r.verdicts, Verdicts::default());
        let json = r.to_json();
        assert!(json.contains("\"verdicts\": {}"));
    }

    #[test]
    fn oversized_oracle_becomes_a_flag() {
        let r = analyze(
            &parse_network(PIVOT4).unwrap(),
            AnalyzeOptions {
                verify: true,
                state_cap: 3,
                ..Default::default()
            },
        );
        assert!(r.oracle.is_none());
        assert!(r.flags.iter().any(|f| f.starts_with("oracle skipped")));
    }

    #[test]
    fn truncated_enumeration_is_uncertified() {
        let r = analyze(
            &parse_network(PIVOT4).unwrap(),
            AnalyzeOptions {
                verify: true,
                max_cycles: 1,
                ..Default::default()
            },
        );
        assert!(r.cycles.truncated);
        assert!(!r.witnesses.dominating.certified);
        assert_eq!(r.verdicts, Verdicts::default());
    }

    #[test]
    fn json_is_deterministic() {
        assert_eq!(verified(PIVOT4).to_json(), verified(PIVOT4).to_json());
    }

    #[test]
    fn text_mentions_cycles_and_bounds() {
        let text = render_text(&verified(CYCLIC3));
        assert!(
            text.contains("C1 even, not strong, inconsistent: a ---> b ---> a"),
            "{text}"
        );
        assert!(text.contains("triple (c, a, b) external"), "{text}");
        assert!(text.contains("2^1 = 2"));
        assert!(text.contains("verdicts: even FVS PASS"));
    }

    #[test]
    fn bound_overflow_is_absent() {
        assert_eq!(bound(127), Some(1 << 127));
        assert_eq!(bound(128), None);
    }
}
