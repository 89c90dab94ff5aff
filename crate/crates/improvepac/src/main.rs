//! Command-line front end: one binary, one verb per experiment family.
//!
//! Every verb assembles an [`ExperimentConfig`], hands it to the runner,
//! prints the JSON run summary on stdout, and (with `--out`) writes the
//! per-trial rows in the chosen format. Exit code 0 means the run
//! completed; 2 flags a config/usage problem; 1 flags everything else,
//! including a failed acceptance bundle.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use improvepac::error::{Error, Result};
use improvepac::harness::{run, run_suite, ExperimentConfig, SuiteBundle, Verb};
use improvepac::schema;

#[derive(Parser)]
#[command(
    name = "improvepac",
    version,
    about = "Experiments for classification where rejected individuals improve",
    long_about = "Experiments for classification where rejected individuals move to a \
                  reachable point the deployed classifier accepts. Worlds, classes, and \
                  improvement maps load from small JSON files; every run is seeded and \
                  reproduces byte-identically."
)]
struct Cli {
    #[command(flatten)]
    globals: Globals,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Globals {
    /// Base seed for every random draw.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write per-trial rows to this file; stdout carries only the JSON summary.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Encoding for the rows written with --out.
    #[arg(long, global = true, value_enum, default_value_t = RowFormat::Csv)]
    format: RowFormat,
    /// Worker threads for trial-parallel experiments (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RowFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LearnerArg {
    /// Majority vote of the consistent concepts.
    Standard,
    /// Majority vote that only accepts when every improvable neighbor is safe.
    Alg3,
    /// Weighted vote with halving instead of discarding.
    Alg4,
}

impl LearnerArg {
    fn name(self) -> &'static str {
        match self {
            LearnerArg::Standard => "standard",
            LearnerArg::Alg3 => "alg3",
            LearnerArg::Alg4 => "alg4",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BallArg {
    /// Accept exactly the positive sample points.
    Memorize,
    /// Reject everything.
    AllNegative,
    /// Accept everything.
    AllPositive,
}

impl BallArg {
    fn name(self) -> &'static str {
        match self {
            BallArg::Memorize => "memorize",
            BallArg::AllNegative => "all-negative",
            BallArg::AllPositive => "all-positive",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelArg {
    /// Flip every label with the same probability.
    Rcn,
    /// Flip labels with probability shrinking in the margin.
    Massart,
}

#[derive(Subcommand)]
enum Cmd {
    /// Consistent proper learning on a finite world.
    ProperPac(ProperPacArgs),
    /// Memorization learning on the line with an improvement radius.
    MemorizePac(MemorizePacArgs),
    /// Probability that a sample hits every listed cell.
    Covering(CoveringArgs),
    /// Isolated-atom adversary around the sample-size threshold.
    SpreadLb(SpreadLbArgs),
    /// Proper fitting on the punctured-interval family.
    UnionDemo(UnionDemoArgs),
    /// Direction recovery under label noise, with the pointwise floor audit.
    NoisyBayes(NoisyBayesArgs),
    /// Online game on a graph world with true labels.
    OnlineRealizable(OnlineArgs),
    /// Online game against a corrupted label sequence.
    OnlineAgnostic(OnlineArgs),
    /// Adaptive hub adversary against a chosen learner.
    OnlineLb(OnlineArgs),
    /// Run a saved experiment config document.
    Run(RunArgs),
    /// Run an acceptance bundle and print one line per criterion.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct ProperPacArgs {
    /// World file with a `concepts` table.
    #[arg(long)]
    class: PathBuf,
    /// World file with a `delta` map.
    #[arg(long)]
    delta: PathBuf,
    /// Distribution file.
    #[arg(long)]
    dist: PathBuf,
    /// Fixed target index (omit to cycle through the class).
    #[arg(long)]
    fstar: Option<usize>,
    /// Sample size per trial.
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Success threshold on the population improvement loss.
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
}

#[derive(Args)]
struct MemorizePacArgs {
    /// Distribution file (default: uniform on [0, 1]).
    #[arg(long)]
    dist: Option<PathBuf>,
    /// The target accepts exactly [fstar-lo, fstar-hi].
    #[arg(long)]
    fstar_lo: f64,
    #[arg(long)]
    fstar_hi: f64,
    /// Improvement radius.
    #[arg(long)]
    r: f64,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
}

#[derive(Args)]
struct CoveringArgs {
    /// Split [0, 1] into this many equal cells.
    #[arg(long, conflicts_with = "cell")]
    n_cells: Option<usize>,
    /// Explicit cell lo:hi (repeatable).
    #[arg(long = "cell", value_parser = parse_cell)]
    cell: Vec<(f64, f64)>,
    /// Distribution file (default: uniform on [0, 1]).
    #[arg(long)]
    dist: Option<PathBuf>,
    #[arg(long)]
    m: usize,
    /// Claimed minimum cell mass; feeds the union-bound comparison.
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
}

fn parse_cell(s: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("bad lo in {s:?}: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("bad hi in {s:?}: {e}"))?;
    Ok((lo, hi))
}

#[derive(Args)]
struct SpreadLbArgs {
    /// Saved config to start from; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of atoms, spaced two radii apart.
    #[arg(long)]
    n_points: Option<usize>,
    /// Improvement radius.
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum)]
    learner: Option<BallArg>,
    #[arg(long)]
    trials: Option<usize>,
}

#[derive(Args)]
struct UnionDemoArgs {
    /// Saved config to start from; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    grid_points: Option<usize>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
}

#[derive(Args)]
struct NoisyBayesArgs {
    #[arg(long, value_enum)]
    channel: ChannelArg,
    /// Label-flip level in [0, 0.5).
    #[arg(long, default_value_t = 0.2)]
    nu: f64,
    /// Angular improvement radius, also the deployment margin.
    #[arg(long, default_value_t = 0.2)]
    r: f64,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Candidate directions on the circle.
    #[arg(long, default_value_t = 360)]
    grid: usize,
    /// Index of the true direction on that grid.
    #[arg(long, default_value_t = 90)]
    wstar_index: usize,
    /// Angles audited for the pointwise noise floor.
    #[arg(long, default_value_t = 720)]
    audit_points: usize,
}

#[derive(Args)]
struct OnlineArgs {
    /// World file with a symmetric `delta` map.
    #[arg(long)]
    graph: PathBuf,
    /// World file with a `concepts` table.
    #[arg(long)]
    class: PathBuf,
    #[arg(long, value_enum)]
    learner: LearnerArg,
    #[arg(long)]
    rounds: usize,
    /// Fixed target index (realizable/agnostic; omit to draw from the seed).
    #[arg(long)]
    fstar: Option<usize>,
    /// Present this node every round instead of random nodes.
    #[arg(long)]
    node: Option<usize>,
    /// Corruption budget (agnostic only).
    #[arg(long)]
    flips: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config document.
    #[arg(long)]
    config: PathBuf,
}

#[derive(Args)]
struct SuiteArgs {
    /// venn | proper | ball | noise | online | all
    #[arg(default_value = "all")]
    bundle: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.globals.jobs {
        if rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().is_err() {
            eprintln!("usage error: --jobs must be set before any work starts");
            return ExitCode::from(2);
        }
    }
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => match e {
            Error::InvalidParameter(_) | Error::Json(_) | Error::Unsupported(_) => {
                eprintln!("usage error: {e}");
                ExitCode::from(2)
            }
            other => {
                eprintln!("error: {other}");
                ExitCode::from(1)
            }
        },
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    let g = cli.globals;
    match cli.cmd {
        Cmd::Suite(args) => suite_cmd(&g, &args),
        Cmd::Run(args) => {
            let mut config = ExperimentConfig::load(&args.config)?;
            apply_globals(&mut config, &g);
            finish(&g, config)
        }
        Cmd::ProperPac(a) => {
            let params = json!({
                "class": path_str(&a.class),
                "delta": path_str(&a.delta),
                "dist": path_str(&a.dist),
                "fstar": a.fstar,
                "m": a.m,
                "eps": a.eps,
            });
            finish(&g, fresh(Verb::ProperPac, params, a.trials, &g))
        }
        Cmd::MemorizePac(a) => {
            let params = json!({
                "dist": a.dist.as_deref().map(path_str),
                "fstar_lo": a.fstar_lo,
                "fstar_hi": a.fstar_hi,
                "r": a.r,
                "m": a.m,
                "eps": a.eps,
            });
            finish(&g, fresh(Verb::MemorizePac, params, a.trials, &g))
        }
        Cmd::Covering(a) => {
            let cells: Vec<(f64, f64)> = match (a.n_cells, a.cell.is_empty()) {
                (Some(n), _) if n > 0 => {
                    (0..n).map(|k| (k as f64 / n as f64, (k + 1) as f64 / n as f64)).collect()
                }
                (None, false) => a.cell.clone(),
                _ => return Err(Error::param("covering needs --n-cells or at least one --cell")),
            };
            let params = json!({
                "cells": cells,
                "dist": a.dist.as_deref().map(path_str),
                "m": a.m,
                "beta": a.beta,
            });
            finish(&g, fresh(Verb::Covering, params, a.trials, &g))
        }
        Cmd::SpreadLb(a) => {
            let overrides = [
                ("n_points", json!(a.n_points)),
                ("r", json!(a.r)),
                ("m", json!(a.m)),
                ("learner", json!(a.learner.map(BallArg::name))),
            ];
            let config =
                merged(a.config.as_deref(), Verb::SpreadLb, &overrides, a.trials, &g)?;
            finish(&g, config)
        }
        Cmd::UnionDemo(a) => {
            let overrides = [
                ("grid_points", json!(a.grid_points)),
                ("r", json!(a.r)),
                ("m", json!(a.m)),
            ];
            let config =
                merged(a.config.as_deref(), Verb::UnionDemo, &overrides, a.trials, &g)?;
            finish(&g, config)
        }
        Cmd::NoisyBayes(a) => {
            let kind = match a.channel {
                ChannelArg::Rcn => "rcn",
                ChannelArg::Massart => "massart",
            };
            let params = json!({
                "channel": {"kind": kind, "nu": a.nu},
                "r": a.r,
                "m": a.m,
                "grid": a.grid,
                "wstar_index": a.wstar_index,
                "audit_points": a.audit_points,
            });
            finish(&g, fresh(Verb::NoisyBayes, params, a.trials, &g))
        }
        Cmd::OnlineRealizable(a) => online(&g, Verb::OnlineRealizable, a),
        Cmd::OnlineAgnostic(a) => online(&g, Verb::OnlineAgnostic, a),
        Cmd::OnlineLb(a) => online(&g, Verb::OnlineLb, a),
    }
}

fn path_str(p: &std::path::Path) -> String {
    p.to_string_lossy().into_owned()
}

fn apply_globals(config: &mut ExperimentConfig, g: &Globals) {
    if let Some(seed) = g.seed {
        config.seed = seed;
    }
    if let Some(out) = &g.out {
        config.out = Some(path_str(out));
    }
}

fn fresh(verb: Verb, params: serde_json::Value, trials: usize, g: &Globals) -> ExperimentConfig {
    let mut params = params;
    strip_nulls(&mut params);
    let mut config = ExperimentConfig {
        name: verb.as_str().into(),
        verb,
        params,
        seed: 0,
        trials,
        out: None,
    };
    apply_globals(&mut config, g);
    config
}

/// Drop nulls so optional flags fall back to the schema defaults instead of
/// arriving as explicit `null`s.
fn strip_nulls(params: &mut serde_json::Value) {
    if let Some(map) = params.as_object_mut() {
        map.retain(|_, v| !v.is_null());
    }
}

fn merged(
    base: Option<&std::path::Path>,
    verb: Verb,
    overrides: &[(&str, serde_json::Value)],
    trials: Option<usize>,
    g: &Globals,
) -> Result<ExperimentConfig> {
    let mut config = match base {
        Some(path) => {
            let c = ExperimentConfig::load(path)?;
            if c.verb != verb {
                return Err(Error::param(format!(
                    "config names verb {}, expected {}",
                    c.verb.as_str(),
                    verb.as_str()
                )));
            }
            c
        }
        None => ExperimentConfig {
            name: verb.as_str().into(),
            verb,
            params: json!({}),
            seed: 0,
            trials: 100,
            out: None,
        },
    };
    for (key, value) in overrides {
        if !value.is_null() {
            config.params[*key] = value.clone();
        }
    }
    if let Some(t) = trials {
        config.trials = t;
    }
    apply_globals(&mut config, g);
    Ok(config)
}

fn online(g: &Globals, verb: Verb, a: OnlineArgs) -> Result<ExitCode> {
    if verb == Verb::OnlineRealizable && a.flips.is_some() {
        return Err(Error::param("--flips only applies to online-agnostic"));
    }
    let params = json!({
        "graph": path_str(&a.graph),
        "class": path_str(&a.class),
        "learner": a.learner.name(),
        "rounds": a.rounds,
        "fstar": a.fstar,
        "node": a.node,
        "flips": a.flips,
    });
    finish(g, fresh(verb, params, 1, g))
}

fn finish(g: &Globals, config: ExperimentConfig) -> Result<ExitCode> {
    let report = run(&config)?;
    if let Some(path) = report.config.out.as_deref() {
        let body = match g.format {
            RowFormat::Csv => report.csv(),
            RowFormat::Json => {
                let mut s = serde_json::to_string_pretty(&report.table.json_rows())?;
                s.push('\n');
                s
            }
        };
        std::fs::write(path, body)?;
    }
    println!("{}", serde_json::to_string_pretty(&report.summary_json())?);
    Ok(ExitCode::SUCCESS)
}

/// Fixture files each criterion loads, for a friendly pre-flight check.
fn required_fixtures(ids: &[usize]) -> Vec<&'static str> {
    let mut files = Vec::new();
    for id in ids {
        match id {
            1 => files.extend(["two_point_split.json", "leave_one_out_three.json"]),
            9 => files.extend(["star_five_graph.json", "star_five_class.json"]),
            13 => files.push("strategic_ten.json"),
            _ => {}
        }
    }
    files
}

fn suite_cmd(g: &Globals, args: &SuiteArgs) -> Result<ExitCode> {
    let bundle = SuiteBundle::parse(&args.bundle)?;
    let fixtures = schema::fixtures_dir();
    for name in required_fixtures(&bundle.criteria()) {
        let path = fixtures.join(name);
        if !path.exists() {
            return Err(Error::Io(std::io::Error::new(
                std::io::ErrorKind::NotFound,
                format!(
                    "missing fixture {} (set IMPROVEPAC_FIXTURES or run from the repo root)",
                    path.display()
                ),
            )));
        }
    }
    let outcomes = run_suite(bundle, &fixtures)?;
    let passed = outcomes.iter().filter(|o| o.pass).count();
    if g.format == RowFormat::Json {
        println!("{}", serde_json::to_string_pretty(&outcomes)?);
    } else {
        for o in &outcomes {
            let status = if o.pass { "PASS" } else { "FAIL" };
            println!(
                "{status}  {:2}  {:<26} {:>6.2}s  {}",
                o.id, o.name, o.elapsed_secs, o.measured
            );
        }
        println!("suite: {passed}/{} passed", outcomes.len());
    }
    Ok(if passed == outcomes.len() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
