#![allow(dead_code)]

use andnot_core::generator::{generate_random, GeneratorConfig};
use andnot_core::influence::{SignedArc, SignedDigraph};
use andnot_core::network::{BooleanNetwork, Sign, VarId};
use proptest::prelude::*;

/// Random AND-NOT networks with `min..=max` variables, including constants
/// and variables that do not depend on anything.
pub fn networks(min: usize, max: usize) -> impl Strategy<Value = BooleanNetwork> {
    (min..=max, any::<u64>(), 0.0..0.4f64, 0.2..0.8f64).prop_flat_map(
        |(n, seed, constant, negative)| {
            (1..=n.min(4)).prop_map(move |max_literals| {
                let config = GeneratorConfig {
                    max_literals,
                    constant_probability: constant,
                    negative_probability: negative,
                    ..GeneratorConfig::new(n, seed)
                };
                generate_random(&config).expect("valid config")
            })
        },
    )
}

/// Random signed digraphs on `n` vertices, allowing self-loops and both
/// signs between the same pair.
pub fn signed_digraphs(max_n: usize) -> impl Strategy<Value = SignedDigraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n, any::<bool>()), 0..=2 * n + 2).prop_map(
            move |arcs| {
                let arcs = arcs.into_iter().map(|(s, t, positive)| {
                    let sign = if positive {
                        Sign::Positive
                    } else {
                        Sign::Negative
                    };
                    SignedArc::new(VarId(s), VarId(t), sign)
                });
                SignedDigraph::anonymous(n, arcs).expect("arcs within range")
            },
        )
    })
}
