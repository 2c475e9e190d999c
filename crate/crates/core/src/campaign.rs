//! Bulk validation of the attractor bounds against the exhaustive oracle on
//! seeded random networks.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::covers::{FamilyKind, SolverOptions};
use crate::cycles::{classify_cycles, is_local_cycle, ClassifyOptions};
use crate::dynamics::{
    attractors, attractors_trapset_oracle, build_astg, pinned_attractors, AttractorSet,
};
use crate::exec::Execution;
use crate::generator::{generate_random, GeneratorConfig};
use crate::influence::{bruteforce_global_ig, structural_global_ig};
use crate::network::{percolate_full, serialize_network, BooleanNetwork};
use crate::report::{analyze, witness_members, AnalyzeOptions, BoundReport};
use crate::{Result, DEFAULT_STATE_CAP};

/// Pinned-subsystem checks are skipped for witness sets larger than this.
pub const DEFAULT_PINNED_MAX: usize = 6;

/// Violations are re-counted by the trap-set oracle up to this many variables.
const RECHECK_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CampaignConfig {
    /// Base configuration; sample `i` uses [`GeneratorConfig::for_sample`].
    pub generator: GeneratorConfig,
    pub samples: u64,
    pub solver: SolverOptions,
    pub state_cap: usize,
    pub pinned_max: usize,
    pub execution: Execution,
}

impl CampaignConfig {
    pub fn new(generator: GeneratorConfig, samples: u64) -> Self {
        CampaignConfig {
            generator,
            samples,
            solver: SolverOptions::default(),
            state_cap: DEFAULT_STATE_CAP,
            pinned_max: DEFAULT_PINNED_MAX,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// (a) attractors ≤ 2^|U| for the strong-even witness.
    StrongEvenBound,
    /// (b) attractors ≤ 2^|U| for the dominating witness.
    DominatingBound,
    /// (c) fixed points ≤ attractors, and fixed points ≤ the dominating bound.
    FixedPoints,
    /// (d) one attractor when no strong even cycle exists.
    UniqueWithoutStrongEven,
    /// (e) full percolation keeps the attractors.
    Percolation,
    /// (f) structural influence graph equals the brute-force one.
    InfluenceGraph,
    /// (g) every local cycle is strong.
    LocalCyclesStrong,
    /// attractors ≤ 2^|U| for the even feedback vertex set.
    EvenFvsBound,
    /// dominating ≤ strong even ≤ even FVS witness sizes when all are minimal.
    BoundOrdering,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::StrongEvenBound,
        Check::DominatingBound,
        Check::FixedPoints,
        Check::UniqueWithoutStrongEven,
        Check::Percolation,
        Check::InfluenceGraph,
        Check::LocalCyclesStrong,
        Check::EvenFvsBound,
        Check::BoundOrdering,
    ];

    /// Whether a failure contradicts an attractor count the trap-set oracle can re-derive.
    fn counts_attractors(self) -> bool {
        matches!(
            self,
            Check::StrongEvenBound
                | Check::DominatingBound
                | Check::FixedPoints
                | Check::UniqueWithoutStrongEven
                | Check::EvenFvsBound
        )
    }
}

/// A failed check with the offending network preserved verbatim.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub sample: u64,
    pub check: Check,
    pub seed: u64,
    pub detail: String,
    /// `Some(true)` when the trap-set oracle agrees with the SCC attractor count.
    pub rechecked: Option<bool>,
    pub network: String,
}

/// A pinned subsystem `g^x` with more than one attractor. Not a bound
/// violation: recorded because the bound arguments go through such subsystems.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PinnedObservation {
    pub sample: u64,
    pub family: FamilyKind,
    pub assignment: String,
    pub attractors: usize,
    pub network: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub samples: u64,
    pub variables: usize,
    pub seed: u64,
    /// Samples where the oracle ran.
    pub verified: u64,
    /// Samples with no strong even cycle.
    pub strong_even_free: u64,
    /// Samples whose witness sets were small enough for the pinned checks.
    pub pinned_checked: u64,
    /// Number of samples by attractor count.
    pub attractor_histogram: BTreeMap<usize, u64>,
    /// Failures per check, every check listed.
    pub failures: BTreeMap<Check, u64>,
    pub violations: Vec<Violation>,
    pub pinned_observations: Vec<PinnedObservation>,
}

impl CampaignSummary {
    pub fn violation_count(&self) -> usize {
        self.violations.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

#[derive(Default)]
struct SampleOutcome {
    verified: bool,
    strong_even_free: bool,
    pinned_checked: bool,
    attractors: Option<usize>,
    violations: Vec<Violation>,
    observations: Vec<PinnedObservation>,
}

fn same_states(a: &AttractorSet, b: &AttractorSet) -> bool {
    a.attractors() == b.attractors()
}

fn run_sample(config: &CampaignConfig, index: u64) -> Result<SampleOutcome> {
    let generator = config.generator.for_sample(index);
    let network = generate_random(&generator)?;
    let text = serialize_network(&network);
    let mut outcome = SampleOutcome::default();
    // Samples run in parallel; everything inside a sample stays sequential.
    let exec = Execution::Sequential;
    let mut fail = |check: Check, detail: String| {
        outcome.violations.push(Violation {
            sample: index,
            check,
            seed: generator.seed,
            detail,
            rechecked: None,
            network: text.clone(),
        });
    };

    let report = analyze(
        &network,
        AnalyzeOptions {
            verify: true,
            state_cap: config.state_cap,
            solver: config.solver,
            execution: exec,
            ..AnalyzeOptions::default()
        },
    );
    let attractor_set = attractors(&network, config.state_cap, exec)?;
    let count = attractor_set.len();

    let bound_checks = [
        (Check::EvenFvsBound, FamilyKind::EvenFvs),
        (Check::StrongEvenBound, FamilyKind::StrongEven),
        (Check::DominatingBound, FamilyKind::Dominating),
    ];
    for (check, kind) in bound_checks {
        let w = report.witnesses.get(kind);
        if w.certified && w.bound.is_some_and(|b| (count as u128) > b) {
            fail(
                check,
                format!(
                    "{count} attractors exceed bound {:?} from {:?}",
                    w.bound, w.members
                ),
            );
        }
    }

    let oracle = report
        .oracle
        .as_ref()
        .expect("verify ran under the state cap");
    if oracle.fixed_points > count {
        fail(
            Check::FixedPoints,
            format!(
                "{} fixed points but {count} attractors",
                oracle.fixed_points
            ),
        );
    }
    if report.witnesses.dominating.certified
        && report
            .fixed_point_bound
            .is_some_and(|b| oracle.fixed_points as u128 > b)
    {
        fail(
            Check::FixedPoints,
            format!(
                "{} fixed points exceed bound {:?}",
                oracle.fixed_points, report.fixed_point_bound
            ),
        );
    }

    let strong_free = report.cycles.strong_even == 0 && !report.cycles.truncated;
    if strong_free && count != 1 {
        fail(
            Check::UniqueWithoutStrongEven,
            format!("no strong even cycle but {count} attractors"),
        );
    }

    let percolated = attractors(&percolate_full(&network), config.state_cap, exec)?;
    if !same_states(&percolated, &attractor_set) {
        fail(
            Check::Percolation,
            format!(
                "attractors {:?} became {:?}",
                attractor_set.rendered(),
                percolated.rendered()
            ),
        );
    }

    let structural = structural_global_ig(&network);
    let brute = bruteforce_global_ig(&network, config.state_cap, exec)?;
    if structural.arcs() != brute.arcs() {
        fail(
            Check::InfluenceGraph,
            format!(
                "structural {} vs brute force {}",
                structural.to_edge_list(),
                brute.to_edge_list()
            ),
        );
    }

    let classification = classify_cycles(
        &structural,
        ClassifyOptions {
            execution: exec,
            ..ClassifyOptions::default()
        },
    );
    for record in &classification.records {
        if record.is_strong() {
            continue;
        }
        if let Some(state) = is_local_cycle(&network, &record.cycle, config.state_cap, exec)? {
            fail(
                Check::LocalCyclesStrong,
                format!(
                    "{} is local at {state} but not strong",
                    record.cycle.display(network.names())
                ),
            );
        }
    }

    let w = &report.witnesses;
    let all_minimal = [&w.even_fvs, &w.strong_even, &w.dominating]
        .iter()
        .all(|w| w.certified && w.minimal);
    if all_minimal
        && !(w.dominating.size <= w.strong_even.size && w.strong_even.size <= w.even_fvs.size)
    {
        fail(
            Check::BoundOrdering,
            format!(
                "sizes dominating {} strong {} fvs {}",
                w.dominating.size, w.strong_even.size, w.even_fvs.size
            ),
        );
    }

    for v in &mut outcome.violations {
        if v.check.counts_attractors() && network.len() <= RECHECK_CAP {
            let stg = build_astg(&network, config.state_cap, exec)?;
            let oracle = attractors_trapset_oracle(&stg, RECHECK_CAP)?;
            v.rechecked = Some(same_states(&oracle, &attractor_set));
        }
    }

    let mut pinned_checked = true;
    for kind in [FamilyKind::StrongEven, FamilyKind::Dominating] {
        let members = witness_members(&report, &network, kind);
        if members.len() > config.pinned_max || !report.witnesses.get(kind).certified {
            pinned_checked = false;
            continue;
        }
        outcome.observations.extend(pinned_multistable(
            &network, &members, kind, index, &text, config,
        )?);
    }

    outcome.verified = true;
    outcome.strong_even_free = strong_free;
    outcome.pinned_checked = pinned_checked;
    outcome.attractors = Some(count);
    Ok(outcome)
}

fn pinned_multistable(
    network: &BooleanNetwork,
    members: &BTreeSet<crate::network::VarId>,
    family: FamilyKind,
    sample: u64,
    text: &str,
    config: &CampaignConfig,
) -> Result<Vec<PinnedObservation>> {
    Ok(
        pinned_attractors(network, members, config.state_cap, Execution::Sequential)?
            .into_iter()
            .filter(|(_, set)| set.len() != 1)
            .map(|(x, set)| PinnedObservation {
                sample,
                family,
                assignment: x
                    .iter()
                    .map(|(v, b)| format!("{}={}", network.name(*v), u8::from(*b)))
                    .collect::<Vec<_>>()
                    .join(" "),
                attractors: set.len(),
                network: text.to_string(),
            })
            .collect(),
    )
}

/// Runs every check on `config.samples` generated networks. Violations are
/// data: the summary keeps each offending network's text, sorted by sample.
pub fn verify_campaign(config: &CampaignConfig) -> Result<CampaignSummary> {
    config.generator.validate()?;
    crate::error::check_state_cap(config.generator.variables, config.state_cap)?;
    let outcomes = config
        .execution
        .map_range(0..config.samples, |i| run_sample(config, i));

    let mut summary = CampaignSummary {
        samples: config.samples,
        variables: config.generator.variables,
        seed: config.generator.seed,
        verified: 0,
        strong_even_free: 0,
        pinned_checked: 0,
        attractor_histogram: BTreeMap::new(),
        failures: Check::ALL.iter().map(|&c| (c, 0)).collect(),
        violations: Vec::new(),
        pinned_observations: Vec::new(),
    };
    for outcome in outcomes {
        let outcome = outcome?;
        summary.verified += u64::from(outcome.verified);
        summary.strong_even_free += u64::from(outcome.strong_even_free);
        summary.pinned_checked += u64::from(outcome.pinned_checked);
        if let Some(count) = outcome.attractors {
            *summary.attractor_histogram.entry(count).or_default() += 1;
        }
        for v in &outcome.violations {
            *summary.failures.entry(v.check).or_default() += 1;
        }
        summary.violations.extend(outcome.violations);
        summary.pinned_observations.extend(outcome.observations);
    }
    summary.violations.sort();
    summary.pinned_observations.sort();
    Ok(summary)
}

/// Analysis of a single campaign sample, for reproducing a reported violation.
pub fn sample_report(config: &CampaignConfig, index: u64) -> Result<(BooleanNetwork, BoundReport)> {
    let network = generate_random(&config.generator.for_sample(index))?;
    let report = analyze(
        &network,
        AnalyzeOptions {
            verify: true,
            state_cap: config.state_cap,
            solver: config.solver,
            ..Default::default()
        },
    );
    Ok((network, report))
}
