mod common;

use andnot_core::cycles::{
    classify_cycles, enumerate_cycles, inconsistency_witnesses, is_local_cycle, ClassifyOptions,
    InconsistencyWitness, Parity, SignedCycle,
};
use andnot_core::influence::{structural_global_ig, SignedArc, SignedDigraph};
use andnot_core::network::{Sign, VarId};
use andnot_core::Execution;
use proptest::prelude::*;

use common::{networks, signed_digraphs};

/// Every simple cycle as (vertices from the smallest, signs), by plain
/// depth-first extension of paths with no pruning at all.
fn brute_force_cycles(g: &SignedDigraph) -> Vec<(Vec<VarId>, Vec<Sign>)> {
    fn extend(g: &SignedDigraph, path: &mut Vec<VarId>, out: &mut Vec<Vec<VarId>>) {
        let start = path[0];
        let last = *path.last().unwrap();
        for v in g.vertices() {
            let has_arc = [Sign::Positive, Sign::Negative]
                .iter()
                .any(|&s| g.has_arc(last, *v, s));
            if !has_arc {
                continue;
            }
            if *v == start {
                out.push(path.clone());
            } else if *v > start && !path.contains(v) {
                path.push(*v);
                extend(g, path, out);
                path.pop();
            }
        }
    }
    let mut vertex_cycles = Vec::new();
    for &v in g.vertices() {
        extend(g, &mut vec![v], &mut vertex_cycles);
    }
    let mut cycles = Vec::new();
    for vs in vertex_cycles {
        let k = vs.len();
        for mask in 0..1u32 << k {
            let signs: Vec<Sign> = (0..k)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Sign::Negative
                    } else {
                        Sign::Positive
                    }
                })
                .collect();
            if (0..k).all(|i| g.has_arc(vs[i], vs[(i + 1) % k], signs[i])) {
                cycles.push((vs.clone(), signs));
            }
        }
    }
    cycles.sort();
    cycles
}

fn check_witness(
    g: &SignedDigraph,
    c: &SignedCycle,
    w: &InconsistencyWitness,
) -> Result<(), String> {
    let chained = |path: &[SignedArc]| {
        path.first().is_some_and(|a| a.source == w.pivot)
            && path.windows(2).all(|p| p[0].target == p[1].source)
    };
    if !chained(&w.positive_path) || !chained(&w.negative_path) {
        return Err("paths must start at the pivot and chain".into());
    }
    if !w
        .positive_path
        .iter()
        .chain(&w.negative_path)
        .all(|a| g.contains(a))
    {
        return Err("path arcs must exist".into());
    }
    if w.positive_path.iter().any(|a| a.sign != Sign::Positive) {
        return Err("positive path has a negative arc".into());
    }
    let (last, init) = w.negative_path.split_last().unwrap();
    if last.sign != Sign::Negative || init.iter().any(|a| a.sign != Sign::Positive) {
        return Err("negative path must be positive then one negative arc".into());
    }
    if init.iter().any(|a| g.in_degree(a.target) != 1) {
        return Err("negative path mediator with several inputs".into());
    }
    let t = w.positive_path.last().unwrap().target;
    let u = last.target;
    if t != w.positive_end
        || u != w.negative_end
        || t == u
        || !c.contains_vertex(t)
        || !c.contains_vertex(u)
    {
        return Err("endpoints must be distinct cycle vertices".into());
    }
    if c.contains_arc(&SignedArc::new(w.pivot, t, Sign::Positive))
        || c.contains_arc(&SignedArc::new(w.pivot, u, Sign::Negative))
    {
        return Err("direct pivot arc belongs to the cycle".into());
    }
    Ok(())
}

proptest! {
    #[test]
    fn enumeration_matches_brute_force(g in signed_digraphs(7)) {
        let found: Vec<(Vec<VarId>, Vec<Sign>)> = enumerate_cycles(&g, usize::MAX)
            .cycles
            .iter()
            .map(|c| (c.vertices(), c.signs()))
            .collect();
        prop_assert_eq!(found, brute_force_cycles(&g));
    }

    #[test]
    fn classification_invariants(g in signed_digraphs(7)) {
        let classification = classify_cycles(&g, ClassifyOptions::default());
        prop_assert!(!classification.truncated);
        for r in &classification.records {
            let negatives = r.cycle.signs().iter().filter(|s| **s == Sign::Negative).count();
            prop_assert_eq!(r.parity == Parity::Even, negatives % 2 == 0);
            if !r.is_strong() {
                prop_assert!(!r.is_consistent(), "a delocalizing triple is an inconsistency witness");
            }
            for w in &r.witnesses {
                if let Err(e) = check_witness(&g, &r.cycle, w) {
                    prop_assert!(false, "{}: {:?}", e, w);
                }
            }
            let again = inconsistency_witnesses(&g, &r.cycle, g.vertices().len());
            prop_assert_eq!(&again.witnesses, &r.witnesses);
        }
    }

    #[test]
    fn parallel_classification_is_identical(g in signed_digraphs(7)) {
        let seq = classify_cycles(&g, ClassifyOptions { execution: Execution::Sequential, ..Default::default() });
        let par = classify_cycles(&g, ClassifyOptions { execution: Execution::Parallel, ..Default::default() });
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn local_cycles_are_strong(net in networks(1, 7)) {
        let g = structural_global_ig(&net);
        for r in classify_cycles(&g, ClassifyOptions::default()).records {
            if let Some(state) = is_local_cycle(&net, &r.cycle, 20, Execution::Sequential).unwrap() {
                prop_assert!(r.is_strong(), "cycle local at {} has a triple", state);
            }
        }
    }
}
