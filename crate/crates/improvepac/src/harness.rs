//! Experiment configuration, reproducible run reports, and the acceptance
//! suite.
//!
//! A run is described by one [`ExperimentConfig`]: a verb naming the
//! operation, a per-verb parameter object, a seed, and a trial count. The
//! same config always produces byte-identical per-trial rows; the report
//! echoes the resolved config so results stay attributable.
//!
//! The acceptance suite bundles the repository's headline checks into
//! pass/fail criteria, each with a pinned configuration, frozen seeds, and
//! a wall-clock budget.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::time::Instant;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::ballworld::{
    covering_experiment, memorization_loss, memorize, memorize_pac_experiment,
    punctured_interval_sweep, spread_adversary_experiment, spread_points, union_interval_demo,
    BallLearner, CoveringExperiment, MemorizePacExperiment, SpreadExperiment,
};
use crate::classprops::{
    hardness_world, is_intersection_closed, is_minimally_consistent,
    is_nearly_minimally_consistent, vc_dimension,
};
use crate::concept::{all_classes, Concept, ConceptClass};
use crate::dist::{DistKind, Distribution};
use crate::error::{Error, Result};
use crate::improvement::{Graph, ImprovementMap};
use crate::loss::{population_loss, LossKind};
use crate::noisy::{noisy_bayes_experiment, NoiseChannel, NoisyBayesExperiment};
use crate::online::{
    constant_sequence, corrupt_sequence, halving_shrink_factor, play_online, random_bounded_graph,
    random_class, random_sequence, realizable_mistake_bound, star_adversary_game, star_world,
    AdversaryCase, OnlineAlgorithm, StarVariant,
};
use crate::proper::{pac_experiment, random_nearly_minimal_class, PacExperiment};
use crate::rng::substream;
use crate::schema::{load_dist_kind, WorldFile};

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// The operations the runner can dispatch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verb {
    ProperPac,
    MemorizePac,
    Covering,
    SpreadLb,
    UnionDemo,
    NoisyBayes,
    OnlineRealizable,
    OnlineAgnostic,
    OnlineLb,
}

impl Verb {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verb::ProperPac => "proper-pac",
            Verb::MemorizePac => "memorize-pac",
            Verb::Covering => "covering",
            Verb::SpreadLb => "spread-lb",
            Verb::UnionDemo => "union-demo",
            Verb::NoisyBayes => "noisy-bayes",
            Verb::OnlineRealizable => "online-realizable",
            Verb::OnlineAgnostic => "online-agnostic",
            Verb::OnlineLb => "online-lb",
        }
    }
}

fn one() -> usize {
    1
}

/// One reproducible run: verb, parameter object, seed, trial count.
///
/// Unknown keys are rejected both here and inside the per-verb parameter
/// object, so a typo'd config fails loudly instead of running something
/// else.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub verb: Verb,
    #[serde(default)]
    pub params: serde_json::Value,
    pub seed: u64,
    #[serde(default = "one")]
    pub trials: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl ExperimentConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Parse the parameter object against the verb's schema; serde names the
    /// offending key on unknown or missing fields.
    fn typed_params<T: DeserializeOwned>(&self) -> Result<T> {
        let value = if self.params.is_null() { json!({}) } else { self.params.clone() };
        serde_json::from_value(value).map_err(|e| {
            Error::param(format!("{} config: {e}", self.verb.as_str()))
        })
    }
}

/// Parameters for the consistent-learner runs on finite worlds.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProperPacParams {
    /// Path to a world file with a `concepts` table.
    pub class: String,
    /// Path to a world file with a `delta` map.
    pub delta: String,
    /// Path to a distribution file.
    pub dist: String,
    /// Sample size per trial.
    pub m: usize,
    /// Fixed target index; omitted = cycle through the class.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fstar: Option<usize>,
    /// Success threshold on the population improvement loss.
    #[serde(default = "default_eps")]
    pub eps: f64,
}

fn default_eps() -> f64 {
    0.1
}

/// Parameters for the memorization runs on the line.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemorizePacParams {
    /// Path to a distribution file; omitted = uniform on `[0, 1]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dist: Option<String>,
    /// The target accepts exactly `[fstar_lo, fstar_hi]`.
    pub fstar_lo: f64,
    pub fstar_hi: f64,
    /// Improvement radius.
    pub r: f64,
    pub m: usize,
    #[serde(default)]
    pub eps: f64,
}

/// Parameters for the cell-covering estimate.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringParams {
    /// Path to a distribution file; omitted = uniform on `[0, 1]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dist: Option<String>,
    /// Closed cells `[lo, hi]`.
    pub cells: Vec<(f64, f64)>,
    pub m: usize,
    /// Claimed minimum cell mass; feeds the union-bound comparison.
    pub beta: f64,
}

/// Parameters for the isolated-atom adversary.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpreadLbParams {
    /// Explicit atom positions; omitted = `n_points` atoms spaced `2r`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_points: Option<usize>,
    /// Improvement radius.
    pub r: f64,
    pub m: usize,
    #[serde(default = "default_ball_learner")]
    pub learner: BallLearner,
}

fn default_ball_learner() -> BallLearner {
    BallLearner::Memorize
}

/// Parameters for the punctured-interval proper-failure demo.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnionDemoParams {
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    #[serde(default = "default_union_r")]
    pub r: f64,
    #[serde(default = "default_union_m")]
    pub m: usize,
}

fn default_grid_points() -> usize {
    101
}

fn default_union_r() -> f64 {
    0.5
}

fn default_union_m() -> usize {
    50
}

/// Parameters for the noisy-channel direction-recovery runs.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoisyBayesParams {
    pub channel: NoiseChannel,
    /// Angular improvement radius, also the deployment margin.
    pub r: f64,
    pub m: usize,
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default = "default_wstar_index")]
    pub wstar_index: usize,
    #[serde(default = "default_audit_points")]
    pub audit_points: usize,
}

fn default_grid() -> usize {
    360
}

fn default_wstar_index() -> usize {
    90
}

fn default_audit_points() -> usize {
    720
}

/// Parameters shared by the online verbs.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OnlineParams {
    /// Path to a world file with a symmetric `delta` map.
    pub graph: String,
    /// Path to a world file with a `concepts` table.
    pub class: String,
    pub learner: OnlineAlgorithm,
    pub rounds: usize,
    /// Fixed target index; omitted = drawn from the seed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fstar: Option<usize>,
    /// Present this node every round instead of random nodes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node: Option<usize>,
    /// Corruption budget for the agnostic verb.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flips: Option<usize>,
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// An order-stable table of per-trial (or per-round) rows.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Render as CSV. Values never contain separators, so no quoting.
    pub fn csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Render the rows as an array of JSON objects keyed by the header.
    pub fn json_rows(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .header
                    .iter()
                    .cloned()
                    .zip(row.iter().map(|v| json!(v)))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        json!(rows)
    }
}

/// Summary statistics over the run's primary metric column, plus
/// verb-specific scalars.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    /// Name of the summarized column.
    pub metric: String,
    pub count: usize,
    pub mean: f64,
    pub std_error: f64,
    pub min: f64,
    pub max: f64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, f64>,
}

fn summarize(metric: &str, values: &[f64]) -> Summary {
    if values.is_empty() {
        return Summary {
            metric: metric.into(),
            count: 0,
            mean: 0.0,
            std_error: 0.0,
            min: 0.0,
            max: 0.0,
            extra: BTreeMap::new(),
        };
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Summary {
        metric: metric.into(),
        count: values.len(),
        mean,
        std_error: (var / n).sqrt(),
        min: values.iter().cloned().fold(f64::INFINITY, f64::min),
        max: values.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        extra: BTreeMap::new(),
    }
}

/// Everything one run produced: config echo, rows, summary, provenance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub config: ExperimentConfig,
    pub table: Table,
    pub summary: Summary,
    pub wall_clock_secs: f64,
    pub version: String,
}

impl RunReport {
    pub fn csv(&self) -> String {
        self.table.csv()
    }

    /// The one-per-run JSON summary: config echo, stats, row count.
    pub fn summary_json(&self) -> serde_json::Value {
        json!({
            "config": self.config,
            "rows": self.table.rows.len(),
            "summary": self.summary,
            "wall_clock_secs": self.wall_clock_secs,
            "version": self.version,
        })
    }
}

fn fmt_f(v: f64) -> String {
    format!("{v}")
}

fn fmt_b(v: bool) -> String {
    if v {
        "1".into()
    } else {
        "0".into()
    }
}

const PAC_HEADER: [&str; 4] = ["trial", "m", "loss", "seed"];
const COVER_HEADER: [&str; 4] = ["trial", "m", "hit", "seed"];
const NOISY_HEADER: [&str; 6] =
    ["trial", "m", "align_angle", "floor_deviation", "conservative", "seed"];
const LEDGER_HEADER: [&str; 5] = ["t", "x", "mistake", "survivors_or_weight", "action"];

fn empty_report(verb: Verb) -> (Table, Summary) {
    let (header, metric): (&[&str], &str) = match verb {
        Verb::ProperPac | Verb::MemorizePac | Verb::SpreadLb | Verb::UnionDemo => {
            (&PAC_HEADER, "loss")
        }
        Verb::Covering => (&COVER_HEADER, "hit"),
        Verb::NoisyBayes => (&NOISY_HEADER, "floor_deviation"),
        Verb::OnlineRealizable | Verb::OnlineAgnostic | Verb::OnlineLb => {
            (&LEDGER_HEADER, "mistake")
        }
    };
    (Table::new(header), summarize(metric, &[]))
}

// ---------------------------------------------------------------------------
// The runner
// ---------------------------------------------------------------------------

/// Dispatch one config to its module operation and assemble the report.
pub fn run(config: &ExperimentConfig) -> Result<RunReport> {
    let started = Instant::now();
    let (table, summary) = if config.trials == 0 {
        empty_report(config.verb)
    } else {
        match config.verb {
            Verb::ProperPac => run_proper_pac(config)?,
            Verb::MemorizePac => run_memorize_pac(config)?,
            Verb::Covering => run_covering(config)?,
            Verb::SpreadLb => run_spread_lb(config)?,
            Verb::UnionDemo => run_union_demo(config)?,
            Verb::NoisyBayes => run_noisy_bayes(config)?,
            Verb::OnlineRealizable | Verb::OnlineAgnostic => run_online(config)?,
            Verb::OnlineLb => run_online_lb(config)?,
        }
    };
    Ok(RunReport {
        config: config.clone(),
        table,
        summary,
        wall_clock_secs: started.elapsed().as_secs_f64(),
        version: env!("CARGO_PKG_VERSION").into(),
    })
}

fn load_distribution(path: Option<&str>, seed: u64) -> Result<Distribution> {
    match path {
        Some(p) => Ok(Distribution::new(load_dist_kind(p)?, seed)),
        None => Ok(Distribution::new(DistKind::UniformInterval, seed)),
    }
}

fn run_proper_pac(config: &ExperimentConfig) -> Result<(Table, Summary)> {
    let p: ProperPacParams = config.typed_params()?;
    let class_file = WorldFile::load(&p.class)?;
    let delta_file = WorldFile::load(&p.delta)?;
    if class_file.n != delta_file.n {
        return Err(Error::space(format!(
            "class file covers {} points but delta file covers {}",
            class_file.n, delta_file.n
        )));
    }
    let cls = class_file.class()?;
    let delta = delta_file.improvement_map()?;
    let kind = load_dist_kind(&p.dist)?;
    if let DistKind::FiniteWeighted { weights } = &kind {
        if weights.len() != cls.n() {
            return Err(Error::space(format!(
                "distribution file weights {} points but the world has {}",
                weights.len(),
                cls.n()
            )));
        }
    }
    let dist = Distribution::new(kind, config.seed);
    let exp = PacExperiment {
        cls,
        delta,
        dist,
        m: p.m,
        trials: config.trials,
        eps: p.eps,
        fstar: p.fstar,
    };
    let out = pac_experiment(&exp, config.seed)?;
    let mut table = Table::new(&PAC_HEADER);
    let mut losses = Vec::with_capacity(out.trials.len());
    for t in &out.trials {
        table.push(vec![
            t.trial.to_string(),
            p.m.to_string(),
            fmt_f(t.loss),
            config.seed.to_string(),
        ]);
        losses.push(t.loss);
    }
    let mut summary = summarize("loss", &losses);
    summary.extra.insert("eps".into(), p.eps);
    summary.extra.insert("success_rate".into(), out.success_rate);
    summary.extra.insert("max_loss".into(), out.max_loss);
    Ok((table, summary))
}

fn run_memorize_pac(config: &ExperimentConfig) -> Result<(Table, Summary)> {
    let p: MemorizePacParams = config.typed_params()?;
    let dist = load_distribution(p.dist.as_deref(), config.seed)?;
    let exp = MemorizePacExperiment {
        fstar: Concept::Interval { lo: p.fstar_lo, hi: p.fstar_hi },
        dist,
        r: p.r,
        m: p.m,
        trials: config.trials,
        eps: p.eps,
    };
    let out = memorize_pac_experiment(&exp, config.seed)?;
    let mut table = Table::new(&PAC_HEADER);
    let mut losses = Vec::with_capacity(out.trials.len());
    let mut memorized = 0usize;
    for t in &out.trials {
        table.push(vec![
            t.trial.to_string(),
            p.m.to_string(),
            fmt_f(t.loss),
            config.seed.to_string(),
        ]);
        losses.push(t.loss);
        memorized += t.positives_memorized;
    }
    let mut summary = summarize("loss", &losses);
    summary.extra.insert("eps".into(), p.eps);
    summary.extra.insert("success_rate".into(), out.success_rate);
    summary
        .extra
        .insert("mean_positives".into(), memorized as f64 / out.trials.len() as f64);
    Ok((table, summary))
}

fn run_covering(config: &ExperimentConfig) -> Result<(Table, Summary)> {
    let p: CoveringParams = config.typed_params()?;
    let dist = load_distribution(p.dist.as_deref(), config.seed)?;
    let exp = CoveringExperiment {
        cells: p.cells.clone(),
        dist,
        m: p.m,
        trials: config.trials,
        beta: p.beta,
    };
    let out = covering_experiment(&exp, config.seed)?;
    let mut table = Table::new(&COVER_HEADER);
    let mut hits = Vec::with_capacity(out.per_trial_all_hit.len());
    for (t, &hit) in out.per_trial_all_hit.iter().enumerate() {
        table.push(vec![
            t.to_string(),
            p.m.to_string(),
            fmt_b(hit),
            config.seed.to_string(),
        ]);
        hits.push(if hit { 1.0 } else { 0.0 });
    }
    let mut summary = summarize("hit", &hits);
    summary.extra.insert("all_hit_rate".into(), out.all_hit_rate);
    summary.extra.insert("union_bound".into(), out.union_bound);
    summary.extra.insert("cells".into(), p.cells.len() as f64);
    Ok((table, summary))
}

fn run_spread_lb(config: &ExperimentConfig) -> Result<(Table, Summary)> {
    let p: SpreadLbParams = config.typed_params()?;
    let points = match (&p.points, p.n_points) {
        (Some(points), _) => points.clone(),
        (None, Some(n)) => spread_points(n, p.r),
        (None, None) => {
            return Err(Error::param("spread-lb config needs `points` or `n_points`"))
        }
    };
    let n_points = points.len();
    let exp = SpreadExperiment { points, r: p.r, m: p.m, trials: config.trials };
    let out = spread_adversary_experiment(&exp, p.learner, config.seed)?;
    let mut table = Table::new(&PAC_HEADER);
    let mut losses = Vec::with_capacity(out.trials.len());
    for t in &out.trials {
        table.push(vec![
            t.trial.to_string(),
            p.m.to_string(),
            fmt_f(t.loss),
            config.seed.to_string(),
        ]);
        losses.push(t.loss);
    }
    let mut summary = summarize("loss", &losses);
    summary.extra.insert("positive_loss_rate".into(), out.positive_loss_rate);
    summary.extra.insert("all_sampled_rate".into(), out.all_sampled_rate);
    summary.extra.insert("n_points".into(), n_points as f64);
    Ok((table, summary))
}

fn run_union_demo(config: &ExperimentConfig) -> Result<(Table, Summary)> {
    let p: UnionDemoParams = config.typed_params()?;
    let out = union_interval_demo(p.grid_points, p.r, p.m, config.trials, config.seed)?;
    let sweep = punctured_interval_sweep(p.grid_points, p.r)?;
    let mut table = Table::new(&PAC_HEADER);
    let mut losses = Vec::with_capacity(out.trials.len());
    for t in &out.trials {
        table.push(vec![
            t.trial.to_string(),
            p.m.to_string(),
            fmt_f(t.loss),
            config.seed.to_string(),
        ]);
        losses.push(t.loss);
    }
    let mut summary = summarize("loss", &losses);
    summary.extra.insert("recovered_rate".into(), out.recovered_rate);
    summary.extra.insert("pair_floor".into(), sweep.min_loss);
    summary.extra.insert("grid_points".into(), p.grid_points as f64);
    Ok((table, summary))
}

fn run_noisy_bayes(config: &ExperimentConfig) -> Result<(Table, Summary)> {
    let p: NoisyBayesParams = config.typed_params()?;
    let exp = NoisyBayesExperiment {
        channel: p.channel,
        r: p.r,
        grid: p.grid,
        wstar_index: p.wstar_index,
        m: p.m,
        trials: config.trials,
        audit_points: p.audit_points,
    };
    let out = noisy_bayes_experiment(&exp, config.seed)?;
    let mut table = Table::new(&NOISY_HEADER);
    let mut devs = Vec::with_capacity(out.trials.len());
    for t in &out.trials {
        table.push(vec![
            t.trial.to_string(),
            p.m.to_string(),
            fmt_f(t.align_angle),
            fmt_f(t.max_floor_deviation),
            fmt_b(t.conservative),
            config.seed.to_string(),
        ]);
        devs.push(t.max_floor_deviation);
    }
    let mut summary = summarize("floor_deviation", &devs);
    summary.extra.insert("recovery_rate".into(), out.recovery_rate);
    summary.extra.insert("bayes_rate".into(), out.bayes_rate);
    summary.extra.insert("r".into(), p.r);
    Ok((table, summary))
}

fn load_online_world(p: &OnlineParams) -> Result<(Graph, ConceptClass)> {
    let graph = WorldFile::load(&p.graph)?.graph()?;
    let class = WorldFile::load(&p.class)?.class()?;
    if graph.n() != class.n() {
        return Err(Error::space("graph and class files cover different node counts"));
    }
    Ok((graph, class))
}

fn run_online(config: &ExperimentConfig) -> Result<(Table, Summary)> {
    let p: OnlineParams = config.typed_params()?;
    if config.trials > 1 {
        return Err(Error::param("online ledgers cover a single game; use trials 0 or 1"));
    }
    let (graph, class) = load_online_world(&p)?;
    let mut rng = substream(config.seed, 0);
    let fstar_index = match p.fstar {
        Some(i) if i < class.len() => i,
        Some(i) => return Err(Error::param(format!("target index {i} out of range"))),
        None => {
            use rand::Rng as _;
            rng.gen_range(0..class.len())
        }
    };
    let truth = class.get(fstar_index).clone();
    let sequence = match p.node {
        Some(x) if x < graph.n() => constant_sequence(x, &truth, p.rounds),
        Some(x) => return Err(Error::param(format!("node {x} out of range"))),
        None => random_sequence(&truth, p.rounds, &mut rng),
    };
    let (sequence, flips) = if config.verb == Verb::OnlineAgnostic {
        let budget = p.flips.unwrap_or(20);
        corrupt_sequence(sequence, budget, &mut rng)
    } else {
        (sequence, 0)
    };
    let out = play_online(&class, &graph, p.learner, &sequence)?;

    let weighted = p.learner == OnlineAlgorithm::RiskAverseWeighted;
    let mut table = Table::new(&LEDGER_HEADER);
    let mut mistakes = Vec::with_capacity(out.rounds.len());
    for r in &out.rounds {
        let survivors_or_weight = if weighted {
            r.weight_after
        } else {
            (r.alive_before - r.discarded) as f64
        };
        let action = if r.suppressed {
            "suppress"
        } else if weighted && r.mistake {
            "halve"
        } else if r.discarded > 0 {
            "discard"
        } else {
            "keep"
        };
        table.push(vec![
            r.round.to_string(),
            r.node.to_string(),
            fmt_b(r.mistake),
            fmt_f(survivors_or_weight),
            action.into(),
        ]);
        mistakes.push(if r.mistake { 1.0 } else { 0.0 });
    }
    let mut summary = summarize("mistake", &mistakes);
    summary.extra.insert("mistakes".into(), out.mistakes as f64);
    summary.extra.insert("fstar_index".into(), fstar_index as f64);
    summary.extra.insert("max_degree".into(), graph.max_degree() as f64);
    summary.extra.insert("class_size".into(), class.len() as f64);
    summary
        .extra
        .insert("bound".into(), realizable_mistake_bound(graph.max_degree(), class.len()));
    summary.extra.insert("min_tally".into(), out.min_tally() as f64);
    summary.extra.insert("suppressed".into(), out.suppressed_updates as f64);
    if weighted {
        summary.extra.insert("rho".into(), halving_shrink_factor(graph.max_degree()));
        summary
            .extra
            .insert("final_weight".into(), out.final_weights.iter().sum::<f64>());
    } else {
        summary.extra.insert("survivors".into(), out.survivors.len() as f64);
        summary.extra.insert(
            "fstar_survives".into(),
            if out.survivors.contains(&fstar_index) { 1.0 } else { 0.0 },
        );
    }
    if config.verb == Verb::OnlineAgnostic {
        summary.extra.insert("flips".into(), flips as f64);
    }
    Ok((table, summary))
}

/// Recognize a hub-and-leaves world file pair: the hub is the last node,
/// adjacent to every leaf, and the class is one of the two shipped leaf
/// families.
fn detect_star(graph: &Graph, class: &ConceptClass) -> Result<(usize, StarVariant)> {
    let n = graph.n();
    if n < 3 {
        return Err(Error::param("adversary worlds need at least two leaves and a hub"));
    }
    let delta = n - 1;
    if graph.neighbors(delta).len() != delta {
        return Err(Error::param("adversary graphs put the hub last, adjacent to every leaf"));
    }
    let positives = (0..delta).filter(|&j| class.get(0).get(j)).count();
    let variant = if positives == 1 {
        StarVariant::Singleton
    } else if positives + 1 == delta {
        StarVariant::LeaveOneOut
    } else {
        return Err(Error::param("class file is not one of the shipped leaf families"));
    };
    let (g, c) = star_world(delta, variant)?;
    let edges: BTreeSet<(usize, usize)> = graph.edges().into_iter().collect();
    let expected: BTreeSet<(usize, usize)> = g.edges().into_iter().collect();
    let classes_match = c.len() == class.len()
        && (0..c.len()).all(|i| c.get(i).to_bytes() == class.get(i).to_bytes());
    if edges != expected || !classes_match {
        return Err(Error::param(
            "graph/class files do not match the hub-and-leaves construction",
        ));
    }
    Ok((delta, variant))
}

fn adversary_case_name(case: AdversaryCase) -> &'static str {
    match case {
        AdversaryCase::CenterAccepted => "center-accepted",
        AdversaryCase::AllNegative => "all-negative",
        AdversaryCase::ExposedLeaf => "exposed-leaf",
    }
}

fn run_online_lb(config: &ExperimentConfig) -> Result<(Table, Summary)> {
    let p: OnlineParams = config.typed_params()?;
    if config.trials > 1 {
        return Err(Error::param("online ledgers cover a single game; use trials 0 or 1"));
    }
    if p.fstar.is_some() || p.node.is_some() || p.flips.is_some() {
        return Err(Error::param("the adversary chooses its own sequence and targets"));
    }
    let (graph, class) = load_online_world(&p)?;
    let (delta, variant) = detect_star(&graph, &class)?;
    let out = star_adversary_game(p.learner, delta, variant, p.rounds)?;
    let mut table = Table::new(&LEDGER_HEADER);
    let mut mistakes = Vec::with_capacity(out.rounds.len());
    for r in &out.rounds {
        table.push(vec![
            r.round.to_string(),
            r.node.to_string(),
            fmt_b(r.mistake),
            fmt_f(r.survivors_or_weight),
            adversary_case_name(r.case).into(),
        ]);
        mistakes.push(if r.mistake { 1.0 } else { 0.0 });
    }
    let mut summary = summarize("mistake", &mistakes);
    summary.extra.insert("mistakes".into(), out.learner_mistakes as f64);
    summary.extra.insert("delta".into(), delta as f64);
    summary.extra.insert("min_tally".into(), out.min_tally() as f64);
    summary.extra.insert(
        "zero_tally_survivor".into(),
        out.zero_tally_survivor().map(|i| i as f64).unwrap_or(-1.0),
    );
    summary
        .extra
        .insert("every_round_forced".into(), if out.every_round_forced() { 1.0 } else { 0.0 });
    Ok((table, summary))
}

// ---------------------------------------------------------------------------
// Acceptance criteria
// ---------------------------------------------------------------------------

/// One acceptance check: pinned configuration, frozen seed, wall-clock
/// budget.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: String,
    pub pass: bool,
    /// The headline measurement, human-readable.
    pub measured: String,
    pub details: String,
    pub elapsed_secs: f64,
}

fn finish(
    id: usize,
    name: &str,
    limit_secs: f64,
    started: Instant,
    ok: bool,
    measured: String,
    details: String,
) -> CriterionOutcome {
    let elapsed_secs = started.elapsed().as_secs_f64();
    let in_budget = elapsed_secs < limit_secs;
    let details = if in_budget {
        details
    } else {
        format!("{details}; exceeded the {limit_secs}s budget")
    };
    CriterionOutcome { id, name: name.into(), pass: ok && in_budget, measured, details, elapsed_secs }
}

/// Fixture verdicts plus the exhaustive inclusion chain
/// intersection-closed => minimally consistent => nearly minimally
/// consistent over every class on at most three points.
fn criterion_1(fix: &Path) -> Result<CriterionOutcome> {
    let started = Instant::now();
    let split = WorldFile::load(fix.join("two_point_split.json"))?.class()?;
    let loo = WorldFile::load(fix.join("leave_one_out_three.json"))?.class()?;
    let split_ic = is_intersection_closed(&split)?.holds;
    let split_mc = is_minimally_consistent(&split)?.holds;
    let loo_mc = is_minimally_consistent(&loo)?.holds;
    let loo_nmc = is_nearly_minimally_consistent(&loo)?.holds;
    let fixtures_ok = !split_ic && split_mc && !loo_mc && loo_nmc;

    let mut classes = 0usize;
    let mut violations = 0usize;
    for n in 1..=3 {
        for cls in all_classes(n) {
            classes += 1;
            let ic = is_intersection_closed(&cls)?.holds;
            let mc = is_minimally_consistent(&cls)?.holds;
            let nmc = is_nearly_minimally_consistent(&cls)?.holds;
            if (ic && !mc) || (mc && !nmc) {
                violations += 1;
            }
        }
    }
    Ok(finish(
        1,
        "property-inclusions",
        10.0,
        started,
        fixtures_ok && violations == 0,
        format!("{violations} chain violations over {classes} classes"),
        format!(
            "two-point split: intersection-closed={split_ic} minimally-consistent={split_mc}; \
             three-point leave-one-out: minimally-consistent={loo_mc} \
             nearly-minimally-consistent={loo_nmc}"
        ),
    ))
}

/// The conservative consistent learner hits the loss target on random
/// nearly-minimally-consistent classes at the theory-sized sample count.
fn criterion_2() -> Result<CriterionOutcome> {
    let started = Instant::now();
    const SEED: u64 = 1302;
    const EPS: f64 = 0.1;
    let mut min_rate = f64::INFINITY;
    let mut max_m = 0usize;
    let classes = 20;
    for c in 0..classes {
        let mut rng = substream(SEED, c);
        let cls = random_nearly_minimal_class(2..=8, 2..=8, &mut rng)?;
        let n = cls.n();
        let vc = vc_dimension(&cls)?;
        let m = ((8.0 / EPS) * (vc as f64 + (1.0f64 / 0.1).ln())).ceil() as usize;
        max_m = max_m.max(m);
        let graph = random_bounded_graph(n, 3, &mut rng)?;
        let exp = PacExperiment {
            cls,
            delta: ImprovementMap::Neighborhood(graph),
            dist: Distribution::uniform_finite(n, SEED),
            m,
            trials: 200,
            eps: EPS,
            fstar: None,
        };
        let out = pac_experiment(&exp, SEED.wrapping_mul(31).wrapping_add(c))?;
        min_rate = min_rate.min(out.success_rate);
    }
    Ok(finish(
        2,
        "consistent-learner-pac",
        60.0,
        started,
        min_rate >= 0.85,
        format!("worst per-class success rate {min_rate:.3} (need >= 0.85)"),
        format!("{classes} random classes, n <= 8, 200 trials each, m up to {max_m}"),
    ))
}

/// Every small class that fails near-minimal consistency admits a concrete
/// world where all consistent proper hypotheses pay at least `1/|S|`.
fn criterion_3() -> Result<CriterionOutcome> {
    let started = Instant::now();
    let mut hard_classes = 0usize;
    let mut violations = 0usize;
    let mut min_floor = f64::INFINITY;
    for n in 1..=3 {
        for cls in all_classes(n) {
            let report = is_nearly_minimally_consistent(&cls)?;
            if report.holds {
                continue;
            }
            hard_classes += 1;
            let witness =
                report.witness.ok_or_else(|| Error::param("failed check must carry a witness"))?;
            let (delta, dist) = hardness_world(n, &witness, 7)?;
            let (value, _) =
                crate::proper::minimax_consistent_loss(&cls, &witness.sample, &delta, &dist)?;
            let floor = 1.0 / witness.support().len() as f64;
            if value + 1e-12 < floor || value <= 0.0 {
                violations += 1;
            }
            min_floor = min_floor.min(value);
        }
    }
    Ok(finish(
        3,
        "hard-world-floor",
        10.0,
        started,
        violations == 0 && hard_classes > 0,
        format!("{violations} violations over {hard_classes} hard classes"),
        format!("smallest minimax loss seen: {min_floor:.4}"),
    ))
}

/// Sample-size `ceil((1/beta) ln(N/gamma))` hits every covering cell with
/// the promised probability.
fn criterion_4() -> Result<CriterionOutcome> {
    let started = Instant::now();
    const SEED: u64 = 1404;
    let n_cells = 10;
    let cells: Vec<(f64, f64)> =
        (0..n_cells).map(|k| (k as f64 / 10.0, (k + 1) as f64 / 10.0)).collect();
    let exp = CoveringExperiment {
        cells,
        dist: Distribution::new(DistKind::UniformInterval, SEED),
        m: 47,
        trials: 1000,
        beta: 0.1,
    };
    let out = covering_experiment(&exp, SEED)?;
    Ok(finish(
        4,
        "cell-covering-rate",
        5.0,
        started,
        out.all_hit_rate >= 0.87,
        format!("all-hit rate {:.3} (need >= 0.87)", out.all_hit_rate),
        format!("10 cells, m=47, 1000 trials; union-bound prediction {:.3}", out.union_bound),
    ))
}

/// Memorization at the covering sample size: zero loss with high
/// probability, and never any loss on truly negative mass.
fn criterion_5() -> Result<CriterionOutcome> {
    let started = Instant::now();
    const SEED: u64 = 1505;
    const R: f64 = 0.05;
    const M: usize = 106;
    const TRIALS: usize = 500;
    let kind = DistKind::Mixture {
        components: vec![
            (0.95, DistKind::UniformInterval),
            (0.05, DistKind::PointMass { point: vec![2.0] }),
        ],
    };
    let fstar = Concept::Interval { lo: 0.0, hi: 1.0 };
    let dist = Distribution::new(kind, SEED);
    let exp = MemorizePacExperiment {
        fstar: fstar.clone(),
        dist: dist.clone(),
        r: R,
        m: M,
        trials: TRIALS,
        eps: 0.0,
    };
    let out = memorize_pac_experiment(&exp, SEED)?;

    // Replay each trial to audit the negative-restricted loss: memorization
    // must never charge mass the target rejects. The replay also
    // cross-checks the experiment's own loss route.
    let neg_dist = Distribution::new(DistKind::PointMass { point: vec![2.0] }, SEED);
    let mut neg_violations = 0usize;
    let mut route_mismatches = 0usize;
    for t in 0..TRIALS {
        let mut rng = substream(SEED, t as u64);
        let mut sample = Vec::with_capacity(M);
        for x in dist.sample(M, &mut rng) {
            sample.push((x.scalar()?, fstar.label(&x)?));
        }
        let h = memorize(&sample);
        if memorization_loss(&h, &fstar, R, &neg_dist)?.mean != 0.0 {
            neg_violations += 1;
        }
        if memorization_loss(&h, &fstar, R, &dist)?.mean != out.trials[t].loss {
            route_mismatches += 1;
        }
    }
    let ok = out.success_rate >= 0.90 && neg_violations == 0 && route_mismatches == 0;
    Ok(finish(
        5,
        "memorization-pac",
        30.0,
        started,
        ok,
        format!(
            "zero-loss rate {:.3} (need >= 0.90); {neg_violations} negative-mass violations",
            out.success_rate
        ),
        format!(
            "20-cell coverable positive region, r={R}, m={M}, {TRIALS} trials; \
             replay route mismatches: {route_mismatches}"
        ),
    ))
}

/// Isolated atoms make the sample-size threshold sharp: below it every
/// learner pays, above it memorization matches the all-atoms-seen rate.
fn criterion_6() -> Result<CriterionOutcome> {
    let started = Instant::now();
    const SEED: u64 = 1600;
    const N: usize = 20;
    const R: f64 = 0.05;
    let points = spread_points(N, R);

    // Below threshold: m = N ln N / 2 rounds to 30.
    let mut forced = true;
    for learner in [BallLearner::Memorize, BallLearner::AllNegative, BallLearner::AllPositive] {
        let exp = SpreadExperiment { points: points.clone(), r: R, m: 30, trials: 100 };
        let out = spread_adversary_experiment(&exp, learner, SEED)?;
        forced &= out.positive_loss_rate == 1.0;
    }

    // Above threshold: m = N ln N + 3N rounds to 120; the zero-loss rate
    // should track the all-atoms-collected probability exp(-N exp(-m/N)).
    let exp = SpreadExperiment { points, r: R, m: 120, trials: 100 };
    let out = spread_adversary_experiment(&exp, BallLearner::Memorize, SEED)?;
    let zero_rate =
        out.trials.iter().filter(|t| t.loss == 0.0).count() as f64 / out.trials.len() as f64;
    let predicted = (-(N as f64) * (-120.0 / N as f64).exp()).exp();
    let ok = forced && zero_rate >= 0.90 && (zero_rate - predicted).abs() <= 0.05;
    Ok(finish(
        6,
        "spread-points-threshold",
        30.0,
        started,
        ok,
        format!(
            "m=30 forced loss on all trials: {forced}; m=120 zero-loss rate {zero_rate:.2} \
             vs predicted {predicted:.4}"
        ),
        format!("{N} atoms spaced {}; all-sampled rate {:.2}", 2.0 * R, out.all_sampled_rate),
    ))
}

/// Exact loss floor across the whole punctured-interval family grid.
fn criterion_7() -> Result<CriterionOutcome> {
    let started = Instant::now();
    let sweep = punctured_interval_sweep(101, 0.5)?;
    let ok = sweep.min_loss >= 0.25 - 1e-12;
    Ok(finish(
        7,
        "punctured-interval-floor",
        5.0,
        started,
        ok,
        format!("minimum pair loss {:.4} (need >= 0.25)", sweep.min_loss),
        format!(
            "101-point grid, all ordered pairs; max {:.4}, floor attained at ({:.3}, {:.3})",
            sweep.max_loss, sweep.argmin.0, sweep.argmin.1
        ),
    ))
}

/// Under flat label noise, the margin-shrunk ERM direction audits at the
/// noise floor pointwise and never accepts truly negative mass.
fn criterion_8() -> Result<CriterionOutcome> {
    let started = Instant::now();
    const SEED: u64 = 1808;
    let exp = NoisyBayesExperiment {
        channel: NoiseChannel::rcn(0.2)?,
        r: 0.2,
        grid: 360,
        wstar_index: 90,
        m: 20_000,
        trials: 100,
        audit_points: 720,
    };
    let out = noisy_bayes_experiment(&exp, SEED)?;
    let aligned: Vec<_> =
        out.trials.iter().filter(|t| t.align_angle <= exp.r + 1e-12).collect();
    let violations = aligned
        .iter()
        .filter(|t| t.max_floor_deviation > 1e-12 || !t.conservative)
        .count();
    let ok = aligned.len() >= 90 && violations == 0;
    let max_dev =
        aligned.iter().map(|t| t.max_floor_deviation).fold(0.0f64, f64::max);
    Ok(finish(
        8,
        "noise-floor-audit",
        120.0,
        started,
        ok,
        format!(
            "{}/100 trials aligned within r; {violations} floor/conservativeness violations",
            aligned.len()
        ),
        format!(
            "flat noise 0.2, m=20000, 720 audit angles; max floor deviation {max_dev:.2e}; \
             exact recovery rate {:.2}",
            out.recovery_rate
        ),
    ))
}

/// On the hub-and-leaves world, plain majority pays every round while the
/// cautious vote stays under the logarithmic bound — driven end-to-end
/// through the config runner and fixture files.
fn criterion_9(fix: &Path) -> Result<CriterionOutcome> {
    let started = Instant::now();
    let graph = fix.join("star_five_graph.json").to_string_lossy().into_owned();
    let class = fix.join("star_five_class.json").to_string_lossy().into_owned();
    let game = |learner: &str, name: &str| -> Result<RunReport> {
        run(&ExperimentConfig {
            name: name.into(),
            verb: Verb::OnlineRealizable,
            params: json!({
                "graph": graph,
                "class": class,
                "learner": learner,
                "rounds": 50,
                "node": 5,
                "fstar": 0,
            }),
            seed: 1909,
            trials: 1,
            out: None,
        })
    };
    let standard = game("standard", "hub-standard")?;
    let cautious = game("alg3", "hub-cautious")?;
    let std_mistakes = standard.summary.extra["mistakes"];
    let cau_mistakes = cautious.summary.extra["mistakes"];
    let bound = cautious.summary.extra["bound"];
    let ok = std_mistakes == 50.0 && cau_mistakes <= 9.0;
    Ok(finish(
        9,
        "hub-majority-contrast",
        5.0,
        started,
        ok,
        format!("plain majority {std_mistakes}/50 mistakes; cautious vote {cau_mistakes}"),
        format!("five leaves, hub presented 50 rounds; cautious bound {bound:.2}"),
    ))
}

/// On random realizable worlds the cautious discard learner respects its
/// mistake bound, keeps the target alive, and discards the promised
/// fraction on every mistake.
fn criterion_10() -> Result<CriterionOutcome> {
    let started = Instant::now();
    const SEED: u64 = 2010;
    const WORLDS: usize = 100;
    let mut worlds_ok = 0usize;
    let mut max_mistakes = 0usize;
    for w in 0..WORLDS {
        use rand::Rng as _;
        let mut rng = substream(SEED, w as u64);
        let n = rng.gen_range(2..=50usize);
        let graph = random_bounded_graph(n, 8, &mut rng)?;
        let size_cap = 64.min(1usize << n.min(6));
        let size = rng.gen_range(2..=size_cap);
        let class = random_class(n, size, &mut rng)?;
        let fstar = rng.gen_range(0..class.len());
        let sequence = random_sequence(class.get(fstar), 500, &mut rng);
        let out = play_online(&class, &graph, OnlineAlgorithm::RiskAverseMajority, &sequence)?;
        let d = graph.max_degree();
        let bound = realizable_mistake_bound(d, class.len());
        let bound_ok = (out.mistakes as f64) <= bound + 1e-9;
        let survives = out.survivors.contains(&fstar);
        let fractions_ok = out.rounds.iter().filter(|r| r.mistake).all(|r| {
            r.discarded as f64 + 1e-9 >= r.alive_before as f64 / (d + 1) as f64
        });
        if bound_ok && survives && fractions_ok && out.suppressed_updates == 0 {
            worlds_ok += 1;
        }
        max_mistakes = max_mistakes.max(out.mistakes);
    }
    Ok(finish(
        10,
        "online-realizable-bounds",
        60.0,
        started,
        worlds_ok == WORLDS,
        format!("{worlds_ok}/{WORLDS} worlds satisfied bound, survival, and discard fraction"),
        format!("random graphs n <= 50, degree <= 8, classes <= 64, 500 rounds; max mistakes {max_mistakes}"),
    ))
}

/// With a bounded corruption budget the weighted learner's total weight
/// stays above the target's floor, and every mistake shrinks it by the
/// promised factor.
fn criterion_11() -> Result<CriterionOutcome> {
    let started = Instant::now();
    const SEED: u64 = 2111;
    const WORLDS: usize = 100;
    let mut worlds_ok = 0usize;
    let mut max_flips = 0usize;
    for w in 0..WORLDS {
        use rand::Rng as _;
        let mut rng = substream(SEED, w as u64);
        let n = rng.gen_range(2..=50usize);
        let graph = random_bounded_graph(n, 8, &mut rng)?;
        let size_cap = 64.min(1usize << n.min(6));
        let size = rng.gen_range(2..=size_cap);
        let class = random_class(n, size, &mut rng)?;
        let fstar = rng.gen_range(0..class.len());
        let sequence = random_sequence(class.get(fstar), 500, &mut rng);
        let (sequence, flips) = corrupt_sequence(sequence, 20, &mut rng);
        max_flips = max_flips.max(flips);
        let out = play_online(&class, &graph, OnlineAlgorithm::RiskAverseWeighted, &sequence)?;
        let rho = halving_shrink_factor(graph.max_degree());
        let lhs = 0.5f64.powi(flips as i32);
        let rhs = class.len() as f64 * rho.powi(out.mistakes as i32);
        let weight_ok = lhs <= rhs * (1.0 + 1e-9);
        let shrink_ok = out.rounds.iter().filter(|r| r.mistake).all(|r| {
            r.weight_after <= rho * r.weight_before * (1.0 + 1e-12)
        });
        if weight_ok && shrink_ok {
            worlds_ok += 1;
        }
    }
    Ok(finish(
        11,
        "online-agnostic-weights",
        60.0,
        started,
        worlds_ok == WORLDS,
        format!("{worlds_ok}/{WORLDS} worlds satisfied the weight floor and shrink factor"),
        format!("corruption budget 20 (max used {max_flips}), 500 rounds per world"),
    ))
}

/// The adaptive hub adversary forces a mistake every round against all
/// three learners, while some concept stays blameless — so the per-round
/// price and the short-horizon floor are both real.
fn criterion_12() -> Result<CriterionOutcome> {
    let started = Instant::now();
    let algorithms = [
        OnlineAlgorithm::StandardMajority,
        OnlineAlgorithm::RiskAverseMajority,
        OnlineAlgorithm::RiskAverseWeighted,
    ];
    let mut combos = 0usize;
    let mut combos_ok = 0usize;
    for &algorithm in &algorithms {
        for delta in [3usize, 5, 8] {
            combos += 1;
            let long = star_adversary_game(algorithm, delta, StarVariant::Singleton, delta * 10)?;
            let long_ok = long.every_round_forced()
                && long.learner_mistakes >= delta * long.min_tally();
            let short = star_adversary_game(algorithm, delta, StarVariant::Singleton, delta - 1)?;
            let short_ok =
                short.learner_mistakes >= delta - 1 && short.zero_tally_survivor().is_some();
            if long_ok && short_ok {
                combos_ok += 1;
            }
        }
    }
    Ok(finish(
        12,
        "hub-adversary-floor",
        10.0,
        started,
        combos_ok == combos,
        format!("{combos_ok}/{combos} learner/size pairs forced at the predicted rate"),
        "long horizon: every round a mistake with min tally <= rounds/size; \
         short horizon: size-1 mistakes with a blameless concept left"
            .into(),
    ))
}

/// When everyone can move anywhere, grading at the destination is the only
/// semantics that lets any hypothesis score well: grading frozen-at-origin
/// truth dooms every hypothesis on a balanced world.
fn criterion_13(fix: &Path) -> Result<CriterionOutcome> {
    let started = Instant::now();
    const EPS: f64 = 0.2;
    let world = WorldFile::load(fix.join("strategic_ten.json"))?;
    let class = world.class()?;
    let delta = world.improvement_map()?;
    let n = class.n();
    let dist = Distribution::uniform_finite(n, 1313);
    let fstar_index = (0..class.len())
        .find(|&i| {
            let l = class.get(i);
            (0..5).all(|x| l.get(x)) && (5..n).all(|x| !l.get(x))
        })
        .ok_or_else(|| Error::param("fixture must contain the half-positive target"))?;
    let fstar = Concept::Finite(class.get(fstar_index).clone());

    // Both labels carry mass above eps under the uniform distribution.
    let positive_mass = (0..n).filter(|&x| class.get(fstar_index).get(x)).count() as f64 / n as f64;
    let masses_ok = positive_mass > EPS && (1.0 - positive_mass) > EPS;

    let mut violations = 0usize;
    let mut min_gaming = f64::INFINITY;
    let mut all_negative_loss = None;
    for i in 0..class.len() {
        let h = Concept::Finite(class.get(i).clone());
        let gaming =
            population_loss(LossKind::Strategic, &h, &fstar, &delta, &dist, 0, 0)?.mean;
        let has_positive = (0..n).any(|x| class.get(i).get(x));
        if has_positive {
            if (gaming - 0.5).abs() > 1e-12 || gaming <= EPS {
                violations += 1;
            }
            min_gaming = min_gaming.min(gaming);
        } else {
            all_negative_loss = Some(gaming);
        }
    }
    let all_negative_loss =
        all_negative_loss.ok_or_else(|| Error::param("fixture must contain the all-negative concept"))?;
    let improvement_of_target =
        population_loss(LossKind::Improvement, &fstar, &fstar, &delta, &dist, 0, 0)?.mean;
    let ok = masses_ok
        && violations == 0
        && all_negative_loss > EPS
        && improvement_of_target == 0.0;
    Ok(finish(
        13,
        "gaming-vs-improvement",
        5.0,
        started,
        ok,
        format!(
            "every gaming-graded hypothesis pays >= {min_gaming:.2} > eps {EPS}; \
             the target's improvement loss is {improvement_of_target}"
        ),
        format!(
            "ten points, move-anywhere world, balanced labels; \
             all-negative hypothesis pays {all_negative_loss} under gaming too"
        ),
    ))
}

/// The named acceptance bundles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteBundle {
    Venn,
    Proper,
    Ball,
    Noise,
    Online,
    All,
}

impl SuiteBundle {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "venn" => Ok(SuiteBundle::Venn),
            "proper" => Ok(SuiteBundle::Proper),
            "ball" => Ok(SuiteBundle::Ball),
            "noise" => Ok(SuiteBundle::Noise),
            "online" => Ok(SuiteBundle::Online),
            "all" => Ok(SuiteBundle::All),
            other => Err(Error::param(format!(
                "unknown bundle {other:?}; expected venn|proper|ball|noise|online|all"
            ))),
        }
    }

    pub fn criteria(&self) -> Vec<usize> {
        match self {
            SuiteBundle::Venn => vec![1],
            SuiteBundle::Proper => vec![2, 3, 13],
            SuiteBundle::Ball => vec![4, 5, 6, 7],
            SuiteBundle::Noise => vec![8],
            SuiteBundle::Online => vec![9, 10, 11, 12],
            SuiteBundle::All => (1..=13).collect(),
        }
    }
}

/// Run one acceptance criterion by id. `fixtures` points at the shipped
/// fixture directory for the criteria that load world files.
pub fn run_criterion(id: usize, fixtures: &Path) -> Result<CriterionOutcome> {
    match id {
        1 => criterion_1(fixtures),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(fixtures),
        10 => criterion_10(),
        11 => criterion_11(),
        12 => criterion_12(),
        13 => criterion_13(fixtures),
        other => Err(Error::param(format!("no criterion {other}; ids run 1..=13"))),
    }
}

/// Run a bundle in id order.
pub fn run_suite(bundle: SuiteBundle, fixtures: &Path) -> Result<Vec<CriterionOutcome>> {
    bundle.criteria().into_iter().map(|id| run_criterion(id, fixtures)).collect()
}
