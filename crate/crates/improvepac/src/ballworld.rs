//! Memorization under metric-ball improvements.
//!
//! When instances can move anywhere within distance `r`, the *memorizing*
//! classifier — accept exactly the positives seen in the sample — is a
//! surprisingly strong improper learner: it has no false positives at all,
//! so rejected individuals either migrate to genuinely positive memorized
//! points or stay put, and loss only accrues on true positives that are
//! farther than `r` from every memorized point.
//!
//! The module provides that learner's exact loss, the covering experiments
//! that explain when it succeeds (every cell of a fine positive cover is hit
//! by the sample with high probability), the spread-point adversary that
//! shows the sample-size threshold is real (isolated atoms must literally
//! all be seen), and the punctured-interval family whose *proper* learners
//! are stuck with constant loss while memorization sails through.

use rayon::prelude::*;

use crate::concept::Concept;
use crate::dist::{DistKind, Distribution};
use crate::error::{Error, Result};
use crate::loss::{exact_population_loss_1d, LossEstimate};
use crate::rng::substream;

/// Matching tolerance for memorized points.
pub const MEMORIZE_TOL: f64 = 1e-9;

/// Memorize the positives of a labeled 1-d sample.
pub fn memorize(sample: &[(f64, bool)]) -> Concept {
    let pairs: Vec<(Vec<f64>, bool)> =
        sample.iter().map(|&(x, y)| (vec![x], y)).collect();
    Concept::memorize(&pairs, MEMORIZE_TOL)
}

/// Exact population improvement loss of a memorizing hypothesis against a
/// 1-d target under a radius-`r` ball.
pub fn memorization_loss(
    h: &Concept,
    fstar: &Concept,
    r: f64,
    dist: &Distribution,
) -> Result<LossEstimate> {
    exact_population_loss_1d(h, fstar, r, dist)
}

// ---------------------------------------------------------------------------
// Covering experiments
// ---------------------------------------------------------------------------

/// A covering of the positive region by 1-d cells, each of claimed mass at
/// least `beta` under the sampling distribution.
#[derive(Clone, Debug)]
pub struct CoveringExperiment {
    /// Closed cells `[lo, hi]`.
    pub cells: Vec<(f64, f64)>,
    pub dist: Distribution,
    /// Samples per trial.
    pub m: usize,
    pub trials: usize,
    /// Claimed minimum cell mass; feeds the union bound.
    pub beta: f64,
}

/// Outcome of a covering run.
#[derive(Clone, Debug)]
pub struct CoveringOutcome {
    /// Fraction of trials in which every cell received at least one sample.
    pub all_hit_rate: f64,
    /// The union-bound prediction `max(0, 1 - N exp(-beta m))`.
    pub union_bound: f64,
    pub per_trial_all_hit: Vec<bool>,
}

/// Estimate the probability that `m` samples hit every cell.
pub fn covering_experiment(exp: &CoveringExperiment, seed: u64) -> Result<CoveringOutcome> {
    if exp.cells.is_empty() {
        return Err(Error::param("covering experiment needs at least one cell"));
    }
    if exp.trials == 0 {
        return Err(Error::param("covering experiment needs at least one trial"));
    }
    exp.dist.validate()?;
    let per_trial_all_hit: Vec<bool> = (0..exp.trials)
        .into_par_iter()
        .map(|t| -> Result<bool> {
            let mut rng = substream(seed, t as u64);
            let mut hit = vec![false; exp.cells.len()];
            for x in exp.dist.sample(exp.m, &mut rng) {
                let v = x.scalar()?;
                for (i, &(lo, hi)) in exp.cells.iter().enumerate() {
                    if lo <= v && v <= hi {
                        hit[i] = true;
                    }
                }
            }
            Ok(hit.iter().all(|&h| h))
        })
        .collect::<Result<Vec<_>>>()?;
    let all_hit_rate =
        per_trial_all_hit.iter().filter(|&&h| h).count() as f64 / exp.trials as f64;
    let union_bound =
        (1.0 - exp.cells.len() as f64 * (-exp.beta * exp.m as f64).exp()).max(0.0);
    Ok(CoveringOutcome { all_hit_rate, union_bound, per_trial_all_hit })
}

// ---------------------------------------------------------------------------
// Memorization PAC experiments
// ---------------------------------------------------------------------------

/// Repeated memorization runs against a fixed 1-d target.
#[derive(Clone, Debug)]
pub struct MemorizePacExperiment {
    pub fstar: Concept,
    pub dist: Distribution,
    /// Improvement radius.
    pub r: f64,
    pub m: usize,
    pub trials: usize,
    /// Success threshold on the exact population improvement loss.
    pub eps: f64,
}

/// Per-trial record of a memorization run.
#[derive(Clone, Debug, PartialEq)]
pub struct MemorizeTrial {
    pub trial: usize,
    pub positives_memorized: usize,
    /// Exact population improvement loss.
    pub loss: f64,
}

/// Aggregate outcome of a memorization run.
#[derive(Clone, Debug)]
pub struct MemorizeOutcome {
    pub trials: Vec<MemorizeTrial>,
    pub success_rate: f64,
    pub mean_loss: f64,
}

/// Run the memorization learner: per trial, draw a labeled sample, memorize
/// its positives, and compute the exact loss.
pub fn memorize_pac_experiment(
    exp: &MemorizePacExperiment,
    seed: u64,
) -> Result<MemorizeOutcome> {
    if exp.trials == 0 {
        return Err(Error::param("memorization experiment needs at least one trial"));
    }
    exp.dist.validate()?;
    let trials: Vec<MemorizeTrial> = (0..exp.trials)
        .into_par_iter()
        .map(|t| -> Result<MemorizeTrial> {
            let mut rng = substream(seed, t as u64);
            let mut sample = Vec::with_capacity(exp.m);
            for x in exp.dist.sample(exp.m, &mut rng) {
                let v = x.scalar()?;
                sample.push((v, exp.fstar.label(&x)?));
            }
            let h = memorize(&sample);
            let memorized = match &h {
                Concept::FiniteSupport { points, .. } => points.len(),
                _ => unreachable!("memorize returns finite support"),
            };
            let loss = memorization_loss(&h, &exp.fstar, exp.r, &exp.dist)?;
            Ok(MemorizeTrial { trial: t, positives_memorized: memorized, loss: loss.mean })
        })
        .collect::<Result<Vec<_>>>()?;
    let success_rate =
        trials.iter().filter(|t| t.loss <= exp.eps).count() as f64 / trials.len() as f64;
    let mean_loss = trials.iter().map(|t| t.loss).sum::<f64>() / trials.len() as f64;
    Ok(MemorizeOutcome { trials, success_rate, mean_loss })
}

// ---------------------------------------------------------------------------
// Spread-point adversaries
// ---------------------------------------------------------------------------

/// The learners pitted against the spread-point adversary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BallLearner {
    Memorize,
    AllNegative,
    AllPositive,
}

/// A world of isolated atoms: points pairwise farther apart than the
/// improvement radius, with uniform atom masses. No classifier can transfer
/// knowledge between atoms, so an adversary choosing the target *after*
/// seeing the hypothesis forces loss on every unsampled atom.
#[derive(Clone, Debug)]
pub struct SpreadExperiment {
    /// Atom positions; pairwise distances must exceed `r`.
    pub points: Vec<f64>,
    /// Improvement radius.
    pub r: f64,
    pub m: usize,
    pub trials: usize,
}

/// Per-trial record of a spread-point run.
#[derive(Clone, Debug, PartialEq)]
pub struct SpreadTrial {
    pub trial: usize,
    pub unsampled: usize,
    /// Exact population improvement loss against the adversarial target.
    pub loss: f64,
}

/// Aggregate outcome of a spread-point run.
#[derive(Clone, Debug)]
pub struct SpreadOutcome {
    pub trials: Vec<SpreadTrial>,
    /// Fraction of trials with strictly positive loss.
    pub positive_loss_rate: f64,
    /// Fraction of trials in which every atom was sampled.
    pub all_sampled_rate: f64,
}

/// Run the spread-point adversary against a learner.
///
/// Each trial draws a random base labeling of the atoms, samples `m` atoms
/// uniformly, fits the learner to the labeled sample, and scores it against
/// the worst target consistent with the sample: the base labels on sampled
/// atoms, the opposite of the hypothesis on unsampled ones.
pub fn spread_adversary_experiment(
    exp: &SpreadExperiment,
    learner: BallLearner,
    seed: u64,
) -> Result<SpreadOutcome> {
    let n = exp.points.len();
    if n == 0 {
        return Err(Error::param("spread experiment needs at least one atom"));
    }
    if exp.trials == 0 {
        return Err(Error::param("spread experiment needs at least one trial"));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (exp.points[i] - exp.points[j]).abs() <= exp.r {
                return Err(Error::param(format!(
                    "atoms {i} and {j} are within the improvement radius; not spread"
                )));
            }
        }
    }
    let atom_dist = Distribution::new(
        DistKind::Mixture {
            components: exp
                .points
                .iter()
                .map(|&p| (1.0 / n as f64, DistKind::PointMass { point: vec![p] }))
                .collect(),
        },
        seed,
    );
    let trials: Vec<SpreadTrial> = (0..exp.trials)
        .into_par_iter()
        .map(|t| -> Result<SpreadTrial> {
            use rand::Rng as _;
            let mut rng = substream(seed, t as u64);
            let base: Vec<bool> = (0..n).map(|_| rng.gen::<bool>()).collect();
            let mut sampled = vec![false; n];
            for _ in 0..exp.m {
                sampled[rng.gen_range(0..n)] = true;
            }
            let sample: Vec<(f64, bool)> = (0..n)
                .filter(|&i| sampled[i])
                .map(|i| (exp.points[i], base[i]))
                .collect();
            let h = match learner {
                BallLearner::Memorize => memorize(&sample),
                BallLearner::AllNegative => {
                    Concept::FiniteSupport { points: vec![], tol: MEMORIZE_TOL }
                }
                BallLearner::AllPositive => Concept::FiniteSupport {
                    points: exp.points.iter().map(|&p| vec![p]).collect(),
                    tol: MEMORIZE_TOL,
                },
            };
            // Adversarial target: base labels where sampled, anti-hypothesis
            // elsewhere.
            let mut target_positives = Vec::new();
            for i in 0..n {
                let xi: crate::space::Instance = exp.points[i].into();
                let label = if sampled[i] { base[i] } else { !h.label(&xi)? };
                if label {
                    target_positives.push(vec![exp.points[i]]);
                }
            }
            let fstar = Concept::FiniteSupport { points: target_positives, tol: MEMORIZE_TOL };
            let loss = exact_population_loss_1d(&h, &fstar, exp.r, &atom_dist)?;
            let unsampled = sampled.iter().filter(|&&s| !s).count();
            Ok(SpreadTrial { trial: t, unsampled, loss: loss.mean })
        })
        .collect::<Result<Vec<_>>>()?;
    let positive_loss_rate =
        trials.iter().filter(|t| t.loss > 0.0).count() as f64 / trials.len() as f64;
    let all_sampled_rate =
        trials.iter().filter(|t| t.unsampled == 0).count() as f64 / trials.len() as f64;
    Ok(SpreadOutcome { trials, positive_loss_rate, all_sampled_rate })
}

/// Evenly spaced spread points: `n` atoms at spacing `2r` starting at 0.
pub fn spread_points(n: usize, r: f64) -> Vec<f64> {
    (0..n).map(|i| 2.0 * r * i as f64).collect()
}

// ---------------------------------------------------------------------------
// The punctured-interval family
// ---------------------------------------------------------------------------

/// Exact population improvement loss between two members of the punctured
/// family `[1/4, 3/4] \ {b}` under `U[0, 1]` and a radius-`r` ball.
pub fn punctured_pair_loss(b_h: f64, b_f: f64, r: f64) -> Result<f64> {
    if !(0.25..=0.75).contains(&b_h) || !(0.25..=0.75).contains(&b_f) {
        return Err(Error::param("puncture positions must lie in [1/4, 3/4]"));
    }
    let h = Concept::PuncturedInterval { lo: 0.25, hi: 0.75, hole: b_h };
    let f = Concept::PuncturedInterval { lo: 0.25, hi: 0.75, hole: b_f };
    let dist = Distribution::new(DistKind::UniformInterval, 0);
    Ok(exact_population_loss_1d(&h, &f, r, &dist)?.mean)
}

/// Outcome of sweeping all ordered pairs of distinct punctures on a grid.
#[derive(Clone, Debug)]
pub struct PuncturedSweep {
    pub grid: Vec<f64>,
    /// Minimum loss over ordered pairs with distinct punctures.
    pub min_loss: f64,
    pub argmin: (f64, f64),
    /// Maximum loss over the same pairs.
    pub max_loss: f64,
}

/// Sweep a uniform grid of punctures in `[1/4, 3/4]` and compute the exact
/// loss for every ordered pair of distinct members.
///
/// Every proper hypothesis in this family keeps a hole the target fills: the
/// hole is a false positive magnet at distance at most `r` from a quarter of
/// the line, so the loss never drops below `1/4` at `r = 1/2`.
pub fn punctured_interval_sweep(grid_points: usize, r: f64) -> Result<PuncturedSweep> {
    if grid_points < 2 {
        return Err(Error::param("sweep needs at least two grid points"));
    }
    let grid: Vec<f64> = (0..grid_points)
        .map(|i| 0.25 + 0.5 * i as f64 / (grid_points - 1) as f64)
        .collect();
    let mut min_loss = f64::INFINITY;
    let mut max_loss = f64::NEG_INFINITY;
    let mut argmin = (grid[0], grid[1]);
    for &bh in &grid {
        for &bf in &grid {
            if bh == bf {
                continue;
            }
            let loss = punctured_pair_loss(bh, bf, r)?;
            if loss < min_loss {
                min_loss = loss;
                argmin = (bh, bf);
            }
            max_loss = max_loss.max(loss);
        }
    }
    Ok(PuncturedSweep { grid, min_loss, argmin, max_loss })
}

/// Per-trial record of the sampled proper-learning demo.
#[derive(Clone, Debug, PartialEq)]
pub struct UnionDemoTrial {
    pub trial: usize,
    /// Grid index of the target puncture.
    pub target_index: usize,
    /// Grid index of the fitted consistent hypothesis.
    pub fit_index: usize,
    /// Exact population improvement loss of the fit against the target.
    pub loss: f64,
}

/// Aggregate outcome of the sampled demo.
#[derive(Clone, Debug)]
pub struct UnionDemoOutcome {
    pub grid: Vec<f64>,
    pub trials: Vec<UnionDemoTrial>,
    pub mean_loss: f64,
    /// Fraction of trials in which the fit recovered the target exactly.
    pub recovered_rate: f64,
}

/// The sampled counterpart of the sweep: draw a labeled sample from a
/// random member of the punctured family and fit the first consistent
/// member, proper-style.
///
/// Punctures are invisible to continuous samples — every member of the
/// grid is almost surely consistent — so the fit lands on the first grid
/// point and pays the hole penalty whenever the target sits elsewhere.
pub fn union_interval_demo(
    grid_points: usize,
    r: f64,
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<UnionDemoOutcome> {
    use rand::Rng as _;
    if trials == 0 {
        return Err(Error::param("union demo needs at least one trial"));
    }
    let sweep_grid: Vec<f64> = punctured_interval_sweep(grid_points, r)?.grid;
    let candidates: Vec<Concept> = sweep_grid
        .iter()
        .map(|&b| Concept::PuncturedInterval { lo: 0.25, hi: 0.75, hole: b })
        .collect();
    let dist = Distribution::new(DistKind::UniformInterval, seed);
    let recs: Vec<UnionDemoTrial> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<UnionDemoTrial> {
            let mut rng = substream(seed, t as u64);
            let target_index = rng.gen_range(0..sweep_grid.len());
            let target = &candidates[target_index];
            let mut sample = Vec::with_capacity(m);
            for x in dist.sample(m, &mut rng) {
                sample.push((x.clone(), target.label(&x)?));
            }
            let mut fit_index = None;
            'cand: for (j, cand) in candidates.iter().enumerate() {
                for (x, y) in &sample {
                    if cand.label(x)? != *y {
                        continue 'cand;
                    }
                }
                fit_index = Some(j);
                break;
            }
            let fit_index = fit_index
                .ok_or_else(|| Error::param("no grid member is consistent with the sample"))?;
            let loss = punctured_pair_loss(sweep_grid[fit_index], sweep_grid[target_index], r)?;
            Ok(UnionDemoTrial { trial: t, target_index, fit_index, loss })
        })
        .collect::<Result<Vec<_>>>()?;
    let mean_loss = recs.iter().map(|t| t.loss).sum::<f64>() / recs.len() as f64;
    let recovered_rate = recs.iter().filter(|t| t.fit_index == t.target_index).count() as f64
        / recs.len() as f64;
    Ok(UnionDemoOutcome { grid: sweep_grid, trials: recs, mean_loss, recovered_rate })
}
