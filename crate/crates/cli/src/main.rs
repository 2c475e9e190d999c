use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use andnot_core::campaign::{verify_campaign, CampaignConfig, CampaignSummary};
use andnot_core::covers::{SolverMode, SolverOptions, DEFAULT_NODE_BUDGET};
use andnot_core::cycles::DEFAULT_MAX_CYCLES;
use andnot_core::dynamics::{attractors_scc, build_astg, STG_DUMP_MAX_VARIABLES};
use andnot_core::generator::{generate_random, GeneratorConfig};
use andnot_core::network::{parse_network, serialize_network, BooleanNetwork};
use andnot_core::report::{analyze, render_text, AnalyzeOptions};
use andnot_core::{Execution, DEFAULT_STATE_CAP};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Attractor-count bounds for AND-NOT Boolean networks.
#[derive(Parser, Debug)]
#[command(name = "andnot-bounds", version, about)]
struct Cli {
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify cycles, compute witness sets and bounds, optionally check them.
    Analyze {
        file: PathBuf,
        /// Count attractors exhaustively and compare with every bound.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        cap: StateCap,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        solver: SolverArgs,
        /// Stop cycle enumeration after this many cycles.
        #[arg(long, default_value_t = DEFAULT_MAX_CYCLES)]
        max_cycles: usize,
        /// Longest inconsistency path to search (default: number of variables).
        #[arg(long)]
        max_path_len: Option<usize>,
    },
    /// List the attractors of the asynchronous dynamics.
    Attractors {
        file: PathBuf,
        #[command(flatten)]
        cap: StateCap,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Also dump the transition graph (at most 10 variables).
        #[arg(long)]
        stg: bool,
    },
    /// Print a random AND-NOT network.
    Random {
        #[command(flatten)]
        generator: GeneratorArgs,
    },
    /// Check the bounds on many random networks against the oracle.
    Campaign {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long)]
        samples: u64,
        #[command(flatten)]
        cap: StateCap,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct StateCap {
    /// Largest variable count explored exhaustively (2^N states).
    #[arg(long = "max-states", env = "ANDNOT_BOUNDS_MAX_STATES", default_value_t = DEFAULT_STATE_CAP)]
    max_states: usize,
}

#[derive(Args, Debug)]
struct SolverArgs {
    /// Exact minimum hitting sets (default).
    #[arg(long, conflicts_with = "greedy")]
    exact: bool,
    /// Greedy hitting sets: faster, not necessarily minimal.
    #[arg(long)]
    greedy: bool,
    /// Branch-and-bound node budget before falling back to greedy.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
}

impl SolverArgs {
    fn options(&self) -> SolverOptions {
        let mode = if self.greedy {
            SolverMode::Greedy
        } else {
            SolverMode::Exact
        };
        SolverOptions {
            mode,
            node_budget: self.budget,
        }
    }
}

#[derive(Args, Debug)]
struct GeneratorArgs {
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    min_lits: usize,
    /// Defaults to min(3, nodes).
    #[arg(long)]
    max_lits: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    neg_prob: f64,
    #[arg(long, default_value_t = 0.1)]
    const_prob: f64,
}

impl GeneratorArgs {
    fn config(&self) -> GeneratorConfig {
        let base = GeneratorConfig::new(self.nodes, self.seed);
        GeneratorConfig {
            min_literals: self.min_lits,
            max_literals: self.max_lits.unwrap_or(base.max_literals),
            negative_probability: self.neg_prob,
            constant_probability: self.const_prob,
            ..base
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Exit status 0: analyzed, 1: usage or input error, 2: a bound was violated.
enum Outcome {
    Clean,
    Violation,
}

fn read_network(path: &Path) -> Result<BooleanNetwork, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_network(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<Outcome, String> {
    let execution = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::Analyze {
            file,
            verify,
            cap,
            format,
            solver,
            max_cycles,
            max_path_len,
        } => {
            let network = read_network(&file)?;
            let report = analyze(
                &network,
                AnalyzeOptions {
                    verify,
                    state_cap: cap.max_states,
                    max_cycles,
                    max_path_len,
                    solver: solver.options(),
                    execution,
                },
            );
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", render_text(&report)),
            }
            Ok(if report.has_violation() {
                Outcome::Violation
            } else {
                Outcome::Clean
            })
        }
        Command::Attractors {
            file,
            cap,
            format,
            stg,
        } => {
            let network = read_network(&file)?;
            let graph =
                build_astg(&network, cap.max_states, execution).map_err(|e| e.to_string())?;
            if stg && network.len() > STG_DUMP_MAX_VARIABLES {
                return Err(format!(
                    "--stg needs at most {STG_DUMP_MAX_VARIABLES} variables"
                ));
            }
            let set = attractors_scc(&graph);
            match format {
                Format::Json => {
                    let mut value =
                        serde_json::to_value(set.to_json()).expect("attractors serialize");
                    if stg {
                        let edges: Vec<String> =
                            graph.edge_list().lines().map(str::to_owned).collect();
                        value["stg"] = serde_json::json!(edges);
                    }
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&value).expect("json value serializes")
                    );
                }
                Format::Text => {
                    let mut out = String::new();
                    let _ = writeln!(
                        out,
                        "{} attractor{}, {} fixed point{}",
                        set.len(),
                        if set.len() == 1 { "" } else { "s" },
                        set.fixed_point_count(),
                        if set.fixed_point_count() == 1 {
                            ""
                        } else {
                            "s"
                        }
                    );
                    for (a, states) in set.attractors().iter().zip(set.rendered()) {
                        let kind = if a.is_fixed_point() {
                            "fixed"
                        } else {
                            "cyclic"
                        };
                        let _ = writeln!(out, "  {kind}: {{{}}}", states.join(", "));
                    }
                    if stg {
                        let _ = writeln!(out, "transitions:");
                        for line in graph.edge_list().lines() {
                            let _ = writeln!(out, "  {line}");
                        }
                    }
                    print!("{out}");
                }
            }
            Ok(Outcome::Clean)
        }
        Command::Random { generator } => {
            let config = generator.config();
            let network = generate_random(&config).map_err(|e| e.to_string())?;
            println!(
                "# random AND-NOT network: {} variables, seed {}",
                config.variables, config.seed
            );
            print!("{}", serialize_network(&network));
            Ok(Outcome::Clean)
        }
        Command::Campaign {
            generator,
            samples,
            cap,
            solver,
            format,
        } => {
            let config = CampaignConfig {
                state_cap: cap.max_states,
                solver: solver.options(),
                execution,
                ..CampaignConfig::new(generator.config(), samples)
            };
            let summary = verify_campaign(&config).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!("{}", summary.to_json()),
                Format::Text => print!("{}", campaign_text(&summary)),
            }
            Ok(if summary.violations.is_empty() {
                Outcome::Clean
            } else {
                Outcome::Violation
            })
        }
    }
}

fn campaign_text(summary: &CampaignSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} samples, {} variables, seed {}: {} verified, {} violations",
        summary.samples,
        summary.variables,
        summary.seed,
        summary.verified,
        summary.violations.len()
    );
    let _ = writeln!(
        out,
        "no strong even cycle: {} samples",
        summary.strong_even_free
    );
    let histogram: Vec<String> = summary
        .attractor_histogram
        .iter()
        .map(|(k, n)| format!("{k}: {n}"))
        .collect();
    let _ = writeln!(out, "attractor counts: {}", histogram.join(", "));
    for (check, n) in &summary.failures {
        let _ = writeln!(out, "  {check:?}: {n}");
    }
    for v in &summary.violations {
        let _ = writeln!(
            out,
            "violation in sample {} ({:?}, seed {}): {}",
            v.sample, v.check, v.seed, v.detail
        );
        for line in v.network.lines() {
            let _ = writeln!(out, "    {line}");
        }
    }
    if !summary.pinned_observations.is_empty() {
        let _ = writeln!(
            out,
            "pinned subsystems with several attractors: {}",
            summary.pinned_observations.len()
        );
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(2),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
