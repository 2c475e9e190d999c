//! Sequential vs data-parallel execution on the exhaustive code paths.

use std::hint::black_box;

use andnot_core::campaign::{verify_campaign, CampaignConfig};
use andnot_core::cycles::{classify_cycles, ClassifyOptions};
use andnot_core::dynamics::{build_astg, fixed_points};
use andnot_core::generator::{generate_random, GeneratorConfig};
use andnot_core::influence::{bruteforce_global_ig, structural_global_ig};
use andnot_core::Execution;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn state_space(c: &mut Criterion) {
    let mut group = c.benchmark_group("state_space");
    group.sample_size(10);
    for n in [14, 18] {
        let net = generate_random(&GeneratorConfig::new(n, 1)).unwrap();
        for (label, exec) in MODES {
            group.bench_with_input(
                BenchmarkId::new(format!("build_astg/{label}"), n),
                &net,
                |b, net| b.iter(|| build_astg(black_box(net), 20, exec).unwrap()),
            );
            group.bench_with_input(
                BenchmarkId::new(format!("fixed_points/{label}"), n),
                &net,
                |b, net| b.iter(|| fixed_points(black_box(net), 20, exec).unwrap()),
            );
            group.bench_with_input(
                BenchmarkId::new(format!("bruteforce_ig/{label}"), n),
                &net,
                |b, net| b.iter(|| bruteforce_global_ig(black_box(net), 20, exec).unwrap()),
            );
        }
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_cycles");
    let config = GeneratorConfig {
        max_literals: 3,
        constant_probability: 0.0,
        ..GeneratorConfig::new(14, 5)
    };
    let graph = structural_global_ig(&generate_random(&config).unwrap());
    for (label, execution) in MODES {
        group.bench_function(label, |b| {
            b.iter(|| {
                classify_cycles(
                    black_box(&graph),
                    ClassifyOptions {
                        execution,
                        ..Default::default()
                    },
                )
            })
        });
    }
    group.finish();
}

fn campaign(c: &mut Criterion) {
    let mut group = c.benchmark_group("campaign_n8_x100");
    group.sample_size(10);
    for (label, execution) in MODES {
        let config = CampaignConfig {
            execution,
            ..CampaignConfig::new(GeneratorConfig::new(8, 42), 100)
        };
        group.bench_function(label, |b| {
            b.iter(|| verify_campaign(black_box(&config)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, state_space, classification, campaign);
criterion_main!(benches);
