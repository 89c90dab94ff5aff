//! Learning through random classification noise on the circle.
//!
//! The world: instances uniform on the unit circle, the target a halfspace
//! through the origin, observed labels flipped independently with rate
//! `nu < 1/2`. The learner runs empirical risk minimization over a uniform
//! grid of candidate directions, then *shrinks* the accepted cap by the
//! improvement radius before deploying.
//!
//! The shrink is what makes noise harmless under improvements: the deployed
//! hypothesis accepts only points strictly inside the true positive cap
//! (conservative — no false positives), and every truly positive point it
//! rejects sits within the improvement radius of the shrunken cap and
//! migrates in. The clean improvement loss is identically zero, so the noisy
//! loss at every point is exactly the noise floor `nu` — the Bayes-optimal
//! value, achieved pointwise rather than merely on average.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arcgeom::ang_dist;
use crate::concept::Concept;
use crate::error::{Error, Result};
use crate::improvement::ImprovementMap;
use crate::loss::improvement_loss;
use crate::rng::substream;
use crate::space::{circle_point, Instance};

/// Label-noise channels on the circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NoiseChannel {
    /// Random classification noise: every label flipped independently with
    /// probability exactly `nu`.
    Rcn { nu: f64 },
    /// Bounded (Massart-style) noise: the flip probability at angle `phi`
    /// is `nu` on the decision boundary and decays linearly to zero at the
    /// poles, so it never exceeds `nu`.
    Massart { nu: f64 },
}

impl NoiseChannel {
    pub fn rcn(nu: f64) -> Result<Self> {
        Self::validate_rate(nu)?;
        Ok(Self::Rcn { nu })
    }

    pub fn massart(nu: f64) -> Result<Self> {
        Self::validate_rate(nu)?;
        Ok(Self::Massart { nu })
    }

    fn validate_rate(nu: f64) -> Result<()> {
        if !(0.0..0.5).contains(&nu) {
            return Err(Error::param("noise rate must lie in [0, 1/2)"));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        Self::validate_rate(self.nu())
    }

    /// The channel's noise-rate bound.
    pub fn nu(&self) -> f64 {
        match *self {
            Self::Rcn { nu } | Self::Massart { nu } => nu,
        }
    }

    /// Flip probability at angle `phi` for target direction `wstar_angle`.
    pub fn flip_prob(&self, phi: f64, wstar_angle: f64) -> f64 {
        match *self {
            Self::Rcn { nu } => nu,
            Self::Massart { nu } => {
                let boundary_dist =
                    (std::f64::consts::FRAC_PI_2 - ang_dist(phi, wstar_angle)).abs();
                nu * (1.0 - boundary_dist / std::f64::consts::FRAC_PI_2).max(0.0)
            }
        }
    }

    /// Pass one label at angle `phi` through the channel.
    pub fn corrupt(
        &self,
        phi: f64,
        wstar_angle: f64,
        label: bool,
        rng: &mut crate::rng::Rng,
    ) -> bool {
        use rand::Rng as _;
        if rng.gen::<f64>() < self.flip_prob(phi, wstar_angle) {
            !label
        } else {
            label
        }
    }
}

/// Draw `m` noisy examples: uniform angles, halfspace labels for the target
/// direction `wstar_angle`, each label passed through the channel.
pub fn noisy_circle_sample(
    wstar_angle: f64,
    channel: NoiseChannel,
    m: usize,
    rng: &mut crate::rng::Rng,
) -> Vec<(f64, bool)> {
    use rand::Rng as _;
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        let phi = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let clean = ang_dist(phi, wstar_angle) <= std::f64::consts::FRAC_PI_2;
        out.push((phi, channel.corrupt(phi, wstar_angle, clean, rng)));
    }
    out
}

/// Inclusive-boundary tolerance for grid membership, in grid steps.
const GRID_EPS: f64 = 1e-9;

/// Empirical errors of every grid halfspace on a labeled angular sample.
///
/// Candidate `k` is the plain halfspace with direction angle `2 pi k / n`;
/// its prediction on angle `phi` is positive iff the angular distance is at
/// most `pi / 2` (inclusive). Computed for all candidates at once with a
/// circular difference array: each example touches one contiguous index arc.
pub fn grid_halfspace_errors(sample: &[(f64, bool)], n: usize) -> Result<Vec<u32>> {
    if n < 4 || n % 4 != 0 {
        return Err(Error::param("direction grid size must be a positive multiple of 4"));
    }
    let step = 2.0 * std::f64::consts::PI / n as f64;
    let quarter = n as f64 / 4.0;
    // Start from "every candidate rejects everything": each positive label
    // is an error. The difference array then credits the arc of candidates
    // that accept the point.
    let base: i64 = sample.iter().filter(|&&(_, y)| y).count() as i64;
    let mut diff = vec![0i64; n + 1];
    let mut add_range = |lo: i64, hi: i64, v: i64| {
        // Wrap the inclusive index range [lo, hi] into [0, n).
        let n = n as i64;
        let lo_m = lo.rem_euclid(n) as usize;
        let hi_m = hi.rem_euclid(n) as usize;
        if hi - lo + 1 >= n {
            diff[0] += v;
            diff[n as usize] -= v;
        } else if lo_m <= hi_m {
            diff[lo_m] += v;
            diff[hi_m + 1] -= v;
        } else {
            diff[lo_m] += v;
            diff[n as usize] -= v;
            diff[0] += v;
            diff[hi_m + 1] -= v;
        }
    };
    for &(phi, y) in sample {
        let s = phi / step;
        let lo = (s - quarter - GRID_EPS).ceil() as i64;
        let hi = (s + quarter + GRID_EPS).floor() as i64;
        // Accepting a positive removes an error; accepting a negative adds
        // one.
        add_range(lo, hi, if y { -1 } else { 1 });
    }
    let mut errors = Vec::with_capacity(n);
    let mut acc = 0i64;
    for d in diff.iter().take(n) {
        acc += d;
        let e = base + acc;
        debug_assert!((0..=sample.len() as i64).contains(&e));
        errors.push(e as u32);
    }
    Ok(errors)
}

/// Index of the empirical risk minimizer; ties break toward the smallest
/// index.
pub fn erm_direction(sample: &[(f64, bool)], n: usize) -> Result<usize> {
    let errors = grid_halfspace_errors(sample, n)?;
    Ok(errors
        .iter()
        .enumerate()
        .min_by_key(|&(i, &e)| (e, i))
        .map(|(i, _)| i)
        .expect("grid is nonempty"))
}

/// Expected noisy improvement loss at one point: the reaction is computed on
/// clean semantics, then the observed label at the landing point flips with
/// rate `nu`, so the pointwise loss is `nu` when the clean loss is zero and
/// `1 - nu` when it is one.
pub fn noisy_point_loss(
    x: &Instance,
    h: &Concept,
    fstar: &Concept,
    delta: &ImprovementMap,
    nu: f64,
) -> Result<f64> {
    let clean = improvement_loss(x, h, fstar, delta)?;
    Ok(nu + (1.0 - 2.0 * nu) * if clean { 1.0 } else { 0.0 })
}

/// The deployed hypothesis: ERM direction with the accepted cap shrunk by
/// the improvement radius.
pub fn shrunken_hypothesis(direction_angle: f64, r: f64) -> Result<Concept> {
    if !(0.0..std::f64::consts::FRAC_PI_2).contains(&r) {
        return Err(Error::param("improvement radius must lie in [0, pi/2)"));
    }
    Ok(Concept::MarginHalfspace { w: circle_point(direction_angle), margin: r })
}

// ---------------------------------------------------------------------------
// The full experiment
// ---------------------------------------------------------------------------

/// One run of: noisy sample, grid ERM, margin shrink, pointwise audit.
#[derive(Clone, Debug)]
pub struct NoisyBayesExperiment {
    pub channel: NoiseChannel,
    /// Angular improvement radius; also the margin shrink.
    pub r: f64,
    /// Number of candidate directions.
    pub grid: usize,
    /// Index of the target direction on the candidate grid.
    pub wstar_index: usize,
    pub m: usize,
    pub trials: usize,
    /// Number of audit points (angles) for the pointwise checks.
    pub audit_points: usize,
}

/// Per-trial record.
#[derive(Clone, Debug, PartialEq)]
pub struct NoisyBayesTrial {
    pub trial: usize,
    pub erm_index: usize,
    /// Whether ERM recovered the target direction exactly.
    pub recovered: bool,
    /// Angular distance from the recovered direction to the target.
    pub align_angle: f64,
    /// Max over audit points of the deviation of the noisy pointwise loss
    /// from the noise floor.
    pub max_floor_deviation: f64,
    /// Whether every audited accepted point is truly positive.
    pub conservative: bool,
}

/// Aggregate outcome.
#[derive(Clone, Debug)]
pub struct NoisyBayesOutcome {
    pub trials: Vec<NoisyBayesTrial>,
    pub recovery_rate: f64,
    /// Fraction of trials that recovered the direction, audited at the
    /// noise floor everywhere, and stayed conservative.
    pub bayes_rate: f64,
}

/// Disagreement mass between two plain halfspaces on the uniform circle:
/// the angle between directions over `pi`.
pub fn halfspace_disagreement(angle_a: f64, angle_b: f64) -> f64 {
    ang_dist(angle_a, angle_b) / std::f64::consts::PI
}

/// Audit one deployed hypothesis pointwise on a uniform angle grid.
/// For the flat-rate channel the deviation is of the noisy pointwise loss
/// from the noise floor `nu`; for the bounded channel the flip rate varies
/// by point, so the audit reports the clean improvement loss instead (its
/// max is zero exactly when the hypothesis is pointwise optimal).
pub fn audit_hypothesis(
    h: &Concept,
    fstar: &Concept,
    r: f64,
    channel: NoiseChannel,
    audit_points: usize,
) -> Result<(f64, bool)> {
    let delta = ImprovementMap::Cap { r };
    let mut max_dev: f64 = 0.0;
    let mut conservative = true;
    for j in 0..audit_points {
        let phi = 2.0 * std::f64::consts::PI * j as f64 / audit_points as f64;
        let x: Instance = Instance::Point(circle_point(phi));
        let dev = match channel {
            NoiseChannel::Rcn { nu } => {
                (noisy_point_loss(&x, h, fstar, &delta, nu)? - nu).abs()
            }
            NoiseChannel::Massart { .. } => {
                if improvement_loss(&x, h, fstar, &delta)? {
                    1.0
                } else {
                    0.0
                }
            }
        };
        max_dev = max_dev.max(dev);
        if h.label(&x)? && !fstar.label(&x)? {
            conservative = false;
        }
    }
    Ok((max_dev, conservative))
}

/// Run the noisy-circle experiment.
pub fn noisy_bayes_experiment(
    exp: &NoisyBayesExperiment,
    seed: u64,
) -> Result<NoisyBayesOutcome> {
    if exp.trials == 0 {
        return Err(Error::param("noisy experiment needs at least one trial"));
    }
    if exp.wstar_index >= exp.grid {
        return Err(Error::param("target index must lie on the candidate grid"));
    }
    if exp.audit_points == 0 {
        return Err(Error::param("noisy experiment needs at least one audit point"));
    }
    let step = 2.0 * std::f64::consts::PI / exp.grid as f64;
    let wstar_angle = exp.wstar_index as f64 * step;
    let fstar = Concept::Halfspace { w: circle_point(wstar_angle) };
    exp.channel.validate()?;
    let trials: Vec<NoisyBayesTrial> = (0..exp.trials)
        .into_par_iter()
        .map(|t| -> Result<NoisyBayesTrial> {
            let mut rng = substream(seed, t as u64);
            let sample = noisy_circle_sample(wstar_angle, exp.channel, exp.m, &mut rng);
            let erm_index = erm_direction(&sample, exp.grid)?;
            let erm_angle = erm_index as f64 * step;
            let h = shrunken_hypothesis(erm_angle, exp.r)?;
            let (max_floor_deviation, conservative) =
                audit_hypothesis(&h, &fstar, exp.r, exp.channel, exp.audit_points)?;
            Ok(NoisyBayesTrial {
                trial: t,
                erm_index,
                recovered: erm_index == exp.wstar_index,
                align_angle: ang_dist(erm_angle, wstar_angle),
                max_floor_deviation,
                conservative,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let recovery_rate =
        trials.iter().filter(|t| t.recovered).count() as f64 / trials.len() as f64;
    let bayes_rate = trials
        .iter()
        .filter(|t| t.recovered && t.max_floor_deviation <= 1e-12 && t.conservative)
        .count() as f64
        / trials.len() as f64;
    Ok(NoisyBayesOutcome { trials, recovery_rate, bayes_rate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;
    use std::f64::consts::{FRAC_PI_2, PI};

    /// Direct per-candidate error count, for checking the difference-array
    /// path.
    fn naive_grid_errors(sample: &[(f64, bool)], n: usize) -> Vec<u32> {
        let step = 2.0 * PI / n as f64;
        (0..n)
            .map(|k| {
                let theta = k as f64 * step;
                sample
                    .iter()
                    .filter(|&&(phi, y)| {
                        let pred = ang_dist(phi, theta) <= FRAC_PI_2 + GRID_EPS * step;
                        pred != y
                    })
                    .count() as u32
            })
            .collect()
    }

    #[test]
    fn channel_flip_rate() {
        let ch = NoiseChannel::rcn(0.2).unwrap();
        let mut rng = substream(5, 0);
        let flips = (0..40_000).filter(|_| !ch.corrupt(0.3, 0.0, true, &mut rng)).count();
        let rate = flips as f64 / 40_000.0;
        // 5 sigma at 40k draws is 0.01.
        assert!((rate - 0.2).abs() < 0.011, "rate {rate}");
        assert!(NoiseChannel::rcn(0.5).is_err());
        assert!(NoiseChannel::massart(-0.1).is_err());
    }

    #[test]
    fn difference_array_matches_naive_count() {
        let mut rng = substream(17, 0);
        for n in [4usize, 8, 360] {
            let sample = noisy_circle_sample(1.3, NoiseChannel::rcn(0.25).unwrap(), 500, &mut rng);
            let fast = grid_halfspace_errors(&sample, n).unwrap();
            let naive = naive_grid_errors(&sample, n);
            assert_eq!(fast, naive, "grid size {n}");
        }
    }

    #[test]
    fn erm_population_error_formula() {
        // Candidate error = nu + (1 - 2 nu) * (angle to target) / pi. Check
        // the clean building block on a noiseless sample.
        let ch = NoiseChannel::rcn(0.0).unwrap();
        let mut rng = substream(23, 0);
        let wstar = FRAC_PI_2;
        let sample = noisy_circle_sample(wstar, ch, 60_000, &mut rng);
        let errors = grid_halfspace_errors(&sample, 360).unwrap();
        for k in [90usize, 120, 270, 0] {
            let theta = k as f64 * 2.0 * PI / 360.0;
            let expected = halfspace_disagreement(theta, wstar);
            let got = errors[k] as f64 / 60_000.0;
            // 5 sigma at worst-case variance is ~0.0102.
            assert!((got - expected).abs() < 0.0105, "candidate {k}: {got} vs {expected}");
        }
    }

    #[test]
    fn erm_recovers_on_grid_target() {
        let ch = NoiseChannel::rcn(0.2).unwrap();
        let mut rng = substream(29, 0);
        let sample = noisy_circle_sample(FRAC_PI_2, ch, 20_000, &mut rng);
        assert_eq!(erm_direction(&sample, 360).unwrap(), 90);
    }

    #[test]
    fn noisy_loss_is_affine_in_clean_loss() {
        let f = Concept::Halfspace { w: circle_point(FRAC_PI_2) };
        let h = shrunken_hypothesis(FRAC_PI_2, 0.05).unwrap();
        let delta = ImprovementMap::Cap { r: 0.05 };
        // Deep inside the cap: clean loss 0 -> noisy loss nu.
        let x = Instance::Point(circle_point(FRAC_PI_2));
        assert!((noisy_point_loss(&x, &h, &f, &delta, 0.2).unwrap() - 0.2).abs() < 1e-15);
        // Deep inside the negative region: clean loss 0 -> nu.
        let x = Instance::Point(circle_point(-FRAC_PI_2));
        assert!((noisy_point_loss(&x, &h, &f, &delta, 0.2).unwrap() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn aligned_shrunken_hypothesis_sits_at_noise_floor() {
        // Exact alignment: conservative everywhere and pointwise loss
        // exactly nu on the whole audit grid.
        let ch = NoiseChannel::rcn(0.2).unwrap();
        let f = Concept::Halfspace { w: circle_point(FRAC_PI_2) };
        let h = shrunken_hypothesis(FRAC_PI_2, 0.05).unwrap();
        let (max_dev, conservative) = audit_hypothesis(&h, &f, 0.05, ch, 720).unwrap();
        assert!(conservative);
        assert!(max_dev <= 1e-12, "max deviation {max_dev}");
    }

    #[test]
    fn misaligned_hypothesis_leaves_stuck_positives() {
        // Tilting the direction by more than zero strands truly positive
        // points near the far edge of the cap: the shrink eats the whole
        // reachability budget, so any tilt alpha leaves a stuck wedge of
        // angular width alpha.
        let ch = NoiseChannel::rcn(0.2).unwrap();
        let f = Concept::Halfspace { w: circle_point(FRAC_PI_2) };
        let alpha = 0.02;
        let h = shrunken_hypothesis(FRAC_PI_2 + alpha, 0.05).unwrap();
        let delta = ImprovementMap::Cap { r: 0.05 };
        // Point at the stranded edge: truly positive (angle 0 from center
        // pi/2 is distance pi/2, boundary-inclusive), rejected, out of
        // reach of the tilted shrunken cap.
        let x = Instance::Point(circle_point(alpha / 2.0));
        let loss = noisy_point_loss(&x, &h, &f, &delta, 0.2).unwrap();
        assert!((loss - 0.8).abs() < 1e-12, "loss {loss}");
        let (max_dev, conservative) = audit_hypothesis(&h, &f, 0.05, ch, 720).unwrap();
        assert!(conservative, "a tilt within the shrink stays conservative");
        assert!(max_dev > 0.5, "the audit flags the stuck wedge: {max_dev}");
    }

    #[test]
    fn full_experiment_hits_bayes_on_every_trial() {
        let exp = NoisyBayesExperiment {
            channel: NoiseChannel::rcn(0.2).unwrap(),
            r: 0.05,
            grid: 360,
            wstar_index: 90,
            m: 20_000,
            trials: 4,
            audit_points: 720,
        };
        let out = noisy_bayes_experiment(&exp, 41).unwrap();
        assert_eq!(out.recovery_rate, 1.0);
        assert_eq!(out.bayes_rate, 1.0);
    }
    #[test]
    fn massart_channel_is_bounded_and_learnable() {
        let ch = NoiseChannel::massart(0.3).unwrap();
        let wstar = FRAC_PI_2;
        // Rate profile: nu at the boundary, zero at the poles, never above
        // nu.
        assert!((ch.flip_prob(0.0, wstar) - 0.3).abs() < 1e-12);
        assert!(ch.flip_prob(wstar, wstar).abs() < 1e-12);
        assert!(ch.flip_prob(wstar + std::f64::consts::PI, wstar).abs() < 1e-12);
        for j in 0..360 {
            let phi = 2.0 * PI * j as f64 / 360.0;
            let p = ch.flip_prob(phi, wstar);
            assert!((0.0..=0.3 + 1e-12).contains(&p), "phi {phi}: rate {p}");
        }
        // ERM still recovers the direction: the noise is symmetric about
        // the boundary and below 1/2 everywhere.
        let mut rng = substream(47, 0);
        let sample = noisy_circle_sample(wstar, ch, 20_000, &mut rng);
        assert_eq!(erm_direction(&sample, 360).unwrap(), 90);
        // And the aligned shrunken hypothesis audits clean.
        let f = Concept::Halfspace { w: circle_point(wstar) };
        let h = shrunken_hypothesis(wstar, 0.05).unwrap();
        let (max_dev, conservative) = audit_hypothesis(&h, &f, 0.05, ch, 720).unwrap();
        assert!(conservative);
        assert_eq!(max_dev, 0.0);
    }
}
