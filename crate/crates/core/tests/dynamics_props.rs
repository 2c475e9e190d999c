mod common;

use std::collections::BTreeSet;

use andnot_core::covers::{build_constraints, min_hitting_set, FamilyKind, SolverOptions};
use andnot_core::cycles::{classify_cycles, ClassifyOptions};
use andnot_core::dynamics::{
    attractors, attractors_restricted_union, attractors_scc, attractors_trapset_oracle, build_astg,
    digraph_attractors, fixed_points,
};
use andnot_core::influence::structural_global_ig;
use andnot_core::network::{make_source, VarId};
use andnot_core::Execution;
use proptest::prelude::*;

use common::networks;

const SEQ: Execution = Execution::Sequential;

fn subset(n: usize, bits: u64) -> BTreeSet<VarId> {
    (0..n).filter(|i| bits >> i & 1 == 1).map(VarId).collect()
}

proptest! {
    #[test]
    fn scc_attractors_equal_minimal_trap_sets(net in networks(1, 5)) {
        let stg = build_astg(&net, 20, SEQ).unwrap();
        let scc = attractors_scc(&stg);
        prop_assert!(!scc.is_empty());
        prop_assert_eq!(attractors_trapset_oracle(&stg, 5).unwrap(), scc);
    }

    #[test]
    fn transitions_flip_one_disagreeing_bit(net in networks(1, 8)) {
        let stg = build_astg(&net, 20, SEQ).unwrap();
        prop_assert_eq!(&stg, &build_astg(&net, 20, Execution::Parallel).unwrap());
        for x in 0..stg.state_count() {
            for (v, y) in stg.successors(x) {
                prop_assert_eq!((x ^ y).count_ones(), 1);
                prop_assert_eq!(x ^ y, 1 << v.0);
            }
        }
        let fixed: Vec<u64> = fixed_points(&net, 20, SEQ).unwrap().iter().map(|s| s.index()).collect();
        let no_successor: Vec<u64> = (0..stg.state_count()).filter(|&x| stg.update_mask(x) == 0).collect();
        prop_assert_eq!(fixed, no_successor);
    }

    #[test]
    fn source_conversion_removes_transitions_only(net in networks(1, 8), bits in any::<u64>()) {
        let u = subset(net.len(), bits);
        let f = build_astg(&net, 20, SEQ).unwrap();
        let g = build_astg(&make_source(&net, &u), 20, SEQ).unwrap();
        for x in 0..f.state_count() {
            prop_assert_eq!(g.update_mask(x) & !f.update_mask(x), 0);
        }
        prop_assert!(attractors_scc(&f).len() <= attractors_scc(&g).len());
    }

    #[test]
    fn pinned_union_is_the_source_network(net in networks(1, 7), bits in any::<u64>()) {
        let u = subset(net.len(), bits & 0b1111);
        prop_assert_eq!(
            attractors_restricted_union(&net, &u, 20, Execution::Parallel).unwrap(),
            attractors(&make_source(&net, &u), 20, SEQ).unwrap()
        );
    }

    #[test]
    fn no_strong_even_cycle_means_one_attractor(net in networks(1, 8)) {
        let classification = classify_cycles(&structural_global_ig(&net), ClassifyOptions::default());
        if classification.strong_even_count() == 0 {
            prop_assert_eq!(attractors(&net, 20, SEQ).unwrap().len(), 1);
        }
    }

    #[test]
    fn bounds_hold(net in networks(1, 8)) {
        let classification = classify_cycles(&structural_global_ig(&net), ClassifyOptions::default());
        let count = attractors(&net, 20, SEQ).unwrap().len();
        for kind in FamilyKind::ALL {
            let w = min_hitting_set(&build_constraints(&classification, kind), SolverOptions::default());
            prop_assert!(count <= 1 << w.len(), "{:?} bound {} below {}", kind, 1 << w.len(), count);
        }
    }

    #[test]
    fn deleting_arcs_never_loses_attractors(
        adjacency in proptest::collection::vec(proptest::collection::btree_set(0usize..10, 0..4), 10),
        keep in proptest::collection::vec(any::<bool>(), 40),
    ) {
        let full: Vec<Vec<usize>> = adjacency.iter().map(|s| s.iter().copied().collect()).collect();
        let mut flags = keep.iter().cycle();
        let pruned: Vec<Vec<usize>> = full
            .iter()
            .map(|succ| succ.iter().copied().filter(|_| *flags.next().unwrap()).collect())
            .collect();
        prop_assert!(digraph_attractors(&full).len() <= digraph_attractors(&pruned).len());
    }
}
