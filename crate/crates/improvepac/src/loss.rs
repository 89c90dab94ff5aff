//! Reaction sets and the losses induced by improvement dynamics.
//!
//! The model: a classifier `h` is published; an individual at `x` that `h`
//! rejects moves to some admissible alternative in `Delta(x)` that `h`
//! accepts, if one exists (choosing adversarially for the learner); otherwise
//! it stays put. The *reaction set* collects the positions the individual
//! might end up occupying:
//!
//! * `h(x) = 1` — the individual is accepted and stays: `{x}`.
//! * `h(x) = 0` and no point of `Delta(x)` is `h`-positive — stuck: `{x}`.
//! * otherwise — the `h`-positive part of `Delta(x)`.
//!
//! Three pointwise losses look at the reaction set:
//!
//! * **improvement loss** — worst case over reactions of `h` mislabeling the
//!   *destination* (`h(x') != f*(x')`): movement genuinely changes the
//!   individual, so the target concept is consulted at the new position;
//! * **strategic loss** — worst case of `h(x') != f*(x)`: movement is mere
//!   gaming, the ground truth stays frozen at the original position;
//! * **0/1 loss** — plain disagreement at `x`, the no-movement baseline.
//!
//! Population losses are exact sums for finite atom distributions, exact
//! interval arithmetic for the 1-d geometric families
//! ([`exact_population_loss_1d`]), and seeded Monte-Carlo otherwise.

use crate::arcgeom::{reaction_arc, Cap};
use crate::concept::{Concept, Example};
use crate::dist::{DistKind, Distribution};
use crate::error::{Error, Result};
use crate::improvement::ImprovementMap;
use crate::region1d::{dist_to_parts, false_positive_parts, IntervalSet, Region1};
use crate::rng::substream;
use crate::space::{euclidean_dist, Instance};

/// Which pointwise loss to aggregate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LossKind {
    Improvement,
    Strategic,
    ZeroOne,
}

// ---------------------------------------------------------------------------
// Reaction sets
// ---------------------------------------------------------------------------

/// Materialize the reaction set of `x` under `h` and `delta`.
///
/// Supported wherever the set is finitely enumerable: finite spaces with
/// explicit or graph improvement maps, and finite-support concepts under
/// metric balls (the reachable support points). Continuous reaction *arcs*
/// and *intervals* are consumed internally by the closed-form losses and are
/// not materialized.
pub fn reaction_set(x: &Instance, h: &Concept, delta: &ImprovementMap) -> Result<Vec<Instance>> {
    match (x, h, delta) {
        (Instance::Node(i), Concept::Finite(l), _) => {
            if l.get(*i) {
                return Ok(vec![x.clone()]);
            }
            let reachable: Vec<Instance> = delta
                .alternatives(*i)?
                .iter()
                .copied()
                .filter(|&j| l.get(j))
                .map(Instance::Node)
                .collect();
            if reachable.is_empty() {
                Ok(vec![x.clone()])
            } else {
                Ok(reachable)
            }
        }
        (Instance::Point(p), Concept::FiniteSupport { points, tol }, ImprovementMap::Ball { r }) => {
            if points.iter().any(|q| euclidean_dist(q, p) <= *tol) {
                return Ok(vec![x.clone()]);
            }
            let reachable: Vec<Instance> = points
                .iter()
                .filter(|q| euclidean_dist(q, p) <= *r)
                .map(|q| Instance::Point(q.clone()))
                .collect();
            if reachable.is_empty() {
                Ok(vec![x.clone()])
            } else {
                Ok(reachable)
            }
        }
        _ => Err(Error::unsupported(
            "reaction set is only materialized for finitely enumerable configurations",
        )),
    }
}

// ---------------------------------------------------------------------------
// Pointwise losses
// ---------------------------------------------------------------------------

/// Pointwise improvement loss: worst case over the reaction set of `h`
/// disagreeing with `fstar` at the destination.
pub fn improvement_loss(
    x: &Instance,
    h: &Concept,
    fstar: &Concept,
    delta: &ImprovementMap,
) -> Result<bool> {
    match (x, h, delta) {
        // Finitely enumerable reaction sets: evaluate directly.
        (Instance::Node(_), Concept::Finite(_), _)
        | (Instance::Point(_), Concept::FiniteSupport { .. }, ImprovementMap::Ball { .. }) => {
            let reaction = reaction_set(x, h, delta)?;
            for dest in &reaction {
                if h.label(dest)? != fstar.label(dest)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        // 1-d interval families under a metric ball: exact region arithmetic.
        (Instance::Point(p), Concept::Interval { .. }, ImprovementMap::Ball { r })
        | (Instance::Point(p), Concept::PuncturedInterval { .. }, ImprovementMap::Ball { r }) => {
            if p.len() != 1 {
                return Err(Error::space("interval concepts require 1-d points"));
            }
            let v = p[0];
            if h.label(x)? {
                return Ok(!fstar.label(x)?);
            }
            let hr = Region1::from_concept(h)?;
            if hr.dist(v) <= *r {
                let fr = Region1::from_concept(fstar)?;
                let (fp_ivs, fp_pts) = false_positive_parts(&hr, &fr);
                Ok(dist_to_parts(v, &fp_ivs, &fp_pts) <= *r)
            } else {
                Ok(fstar.label(x)?)
            }
        }
        // Caps on the circle under angular movement: exact arc arithmetic.
        (Instance::Point(p), Concept::Halfspace { .. }, ImprovementMap::Cap { r })
        | (Instance::Point(p), Concept::MarginHalfspace { .. }, ImprovementMap::Cap { r }) => {
            if h.label(x)? {
                return Ok(!fstar.label(x)?);
            }
            let phi = crate::arcgeom::angle_of(p)?;
            let hcap = Cap::from_concept(h)?;
            let fcap = Cap::from_concept(fstar)?;
            match reaction_arc(phi, &hcap, *r)? {
                Some(arc) => Ok(!arc.within(&fcap)),
                None => Ok(fstar.label(x)?),
            }
        }
        _ => Err(Error::unsupported(
            "improvement loss: unsupported concept/improvement combination",
        )),
    }
}

/// Pointwise strategic loss: worst case over the reaction set of `h`
/// disagreeing with `fstar` *at the original position*.
pub fn strategic_loss(
    x: &Instance,
    h: &Concept,
    fstar: &Concept,
    delta: &ImprovementMap,
) -> Result<bool> {
    let truth = fstar.label(x)?;
    if h.label(x)? {
        return Ok(!truth);
    }
    // Rejected at x. If any h-positive destination is reachable the
    // individual presents as positive while the frozen truth stays `truth`;
    // otherwise it stays rejected at x.
    let reachable = match (x, h, delta) {
        (Instance::Node(i), Concept::Finite(l), _) => {
            delta.alternatives(*i)?.iter().any(|&j| l.get(j))
        }
        (Instance::Point(p), Concept::FiniteSupport { points, .. }, ImprovementMap::Ball { r }) => {
            points.iter().any(|q| euclidean_dist(q, p) <= *r)
        }
        (Instance::Point(p), Concept::Interval { .. }, ImprovementMap::Ball { r })
        | (Instance::Point(p), Concept::PuncturedInterval { .. }, ImprovementMap::Ball { r }) => {
            Region1::from_concept(h)?.dist(p[0]) <= *r
        }
        (Instance::Point(p), Concept::Halfspace { .. }, ImprovementMap::Cap { r })
        | (Instance::Point(p), Concept::MarginHalfspace { .. }, ImprovementMap::Cap { r }) => {
            let phi = crate::arcgeom::angle_of(p)?;
            reaction_arc(phi, &Cap::from_concept(h)?, *r)?.is_some()
        }
        _ => {
            return Err(Error::unsupported(
                "strategic loss: unsupported concept/improvement combination",
            ))
        }
    };
    if reachable {
        // Destination label is 1 by construction; mismatch iff truth is 0.
        Ok(!truth)
    } else {
        Ok(truth)
    }
}

/// Plain 0/1 disagreement at `x`.
pub fn zero_one_loss(x: &Instance, h: &Concept, fstar: &Concept) -> Result<bool> {
    Ok(h.label(x)? != fstar.label(x)?)
}

/// Dispatch on [`LossKind`].
pub fn point_loss(
    kind: LossKind,
    x: &Instance,
    h: &Concept,
    fstar: &Concept,
    delta: &ImprovementMap,
) -> Result<bool> {
    match kind {
        LossKind::Improvement => improvement_loss(x, h, fstar, delta),
        LossKind::Strategic => strategic_loss(x, h, fstar, delta),
        LossKind::ZeroOne => zero_one_loss(x, h, fstar),
    }
}

// ---------------------------------------------------------------------------
// Population losses
// ---------------------------------------------------------------------------

/// A population loss value with its provenance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LossEstimate {
    pub mean: f64,
    /// Standard error of the Monte-Carlo mean; `None` for exact values.
    pub stderr: Option<f64>,
    pub exact: bool,
}

impl LossEstimate {
    fn exact(mean: f64) -> Self {
        LossEstimate { mean, stderr: None, exact: true }
    }
}

/// Population loss of `h` against `fstar` under improvement map `delta` and
/// instance distribution `dist`.
///
/// Finite atom distributions are summed exactly. Continuous distributions are
/// estimated with `n_mc` Monte-Carlo draws from the substream `(dist.rng_seed,
/// stream)`; use [`exact_population_loss_1d`] where the 1-d closed form
/// applies.
pub fn population_loss(
    kind: LossKind,
    h: &Concept,
    fstar: &Concept,
    delta: &ImprovementMap,
    dist: &Distribution,
    n_mc: usize,
    stream: u64,
) -> Result<LossEstimate> {
    dist.validate()?;
    if let DistKind::FiniteWeighted { weights } = &dist.kind {
        let mut total = 0.0;
        for (i, w) in weights.iter().enumerate() {
            if *w == 0.0 {
                continue;
            }
            if point_loss(kind, &Instance::Node(i), h, fstar, delta)? {
                total += w;
            }
        }
        return Ok(LossEstimate::exact(total));
    }
    if n_mc == 0 {
        return Err(Error::param("Monte-Carlo estimation needs n_mc > 0"));
    }
    let mut rng = substream(dist.rng_seed, stream);
    let mut hits = 0usize;
    for _ in 0..n_mc {
        let x = dist.draw(&mut rng);
        if point_loss(kind, &x, h, fstar, delta)? {
            hits += 1;
        }
    }
    let mean = hits as f64 / n_mc as f64;
    let stderr = (mean * (1.0 - mean) / n_mc as f64).sqrt();
    Ok(LossEstimate { mean, stderr: Some(stderr), exact: false })
}

/// Exact population *improvement* loss for the 1-d geometric families.
///
/// Supports concepts with 1-d regions (intervals, punctured intervals, finite
/// supports) under a metric ball, and distributions that are uniform on
/// `[0, 1]`, point masses, or mixtures of those. The continuous part is
/// computed by interval arithmetic; atoms are evaluated pointwise.
pub fn exact_population_loss_1d(
    h: &Concept,
    fstar: &Concept,
    r: f64,
    dist: &Distribution,
) -> Result<LossEstimate> {
    dist.validate()?;
    let hr = Region1::from_concept(h)?;
    let fr = Region1::from_concept(fstar)?;

    // Decompose the distribution into uniform-[0,1] weight plus atoms.
    let mut uniform_weight = 0.0;
    let mut atoms: Vec<(f64, f64)> = Vec::new(); // (weight, position)
    flatten_1d(&dist.kind, 1.0, &mut uniform_weight, &mut atoms)?;

    let mut total = 0.0;
    if uniform_weight > 0.0 {
        total += uniform_weight * bad_set_1d(&hr, &fr, r).intersect(&IntervalSet::interval(0.0, 1.0)).measure();
    }
    let delta = ImprovementMap::Ball { r };
    for (w, pos) in atoms {
        if w > 0.0 && improvement_loss(&pos.into(), h, fstar, &delta)? {
            total += w;
        }
    }
    Ok(LossEstimate::exact(total))
}

fn flatten_1d(
    kind: &DistKind,
    scale: f64,
    uniform_weight: &mut f64,
    atoms: &mut Vec<(f64, f64)>,
) -> Result<()> {
    match kind {
        DistKind::UniformInterval => {
            *uniform_weight += scale;
            Ok(())
        }
        DistKind::PointMass { point } => {
            if point.len() != 1 {
                return Err(Error::space("exact 1-d loss requires 1-d atoms"));
            }
            atoms.push((scale, point[0]));
            Ok(())
        }
        DistKind::Mixture { components } => {
            for (w, k) in components {
                flatten_1d(k, scale * w, uniform_weight, atoms)?;
            }
            Ok(())
        }
        _ => Err(Error::unsupported(
            "exact 1-d loss supports uniform-[0,1], point masses, and their mixtures",
        )),
    }
}

/// The set of `h`-negative points suffering improvement loss, as intervals.
///
/// A rejected point loses iff it can reach a false positive of `h`, or it can
/// reach no `h`-positive at all but is itself truly positive. Punctured
/// points of either concept are measure-zero and do not affect the result.
fn bad_set_1d(h: &Region1, f: &Region1, r: f64) -> IntervalSet {
    let everything = IntervalSet::interval(f64::NEG_INFINITY, f64::INFINITY);
    let h_closure_effective = IntervalSet::from_intervals(
        &h.closure()
            .intervals()
            .iter()
            .copied()
            .filter(|&(a, b)| !(a == b && h.holes().contains(&a)))
            .collect::<Vec<_>>(),
    );
    let negatives = everything.subtract(&h_closure_effective);
    let reach = h_closure_effective.dilate(r);

    let (fp_ivs, fp_pts) = false_positive_parts(h, f);
    let fp_all = fp_ivs.union(&IntervalSet::from_intervals(
        &fp_pts.iter().map(|&p| (p, p)).collect::<Vec<_>>(),
    ));
    let fp_reach = fp_all.dilate(r);

    let f_closure_effective = IntervalSet::from_intervals(
        &f.closure()
            .intervals()
            .iter()
            .copied()
            .filter(|&(a, b)| !(a == b && f.holes().contains(&a)))
            .collect::<Vec<_>>(),
    );

    // Movers that land on a false positive...
    let moved_bad = negatives.intersect(&reach).intersect(&fp_reach);
    // ...plus stuck points that are truly positive.
    let stuck_bad = negatives.subtract(&reach).intersect(&f_closure_effective);
    moved_bad.union(&stuck_bad)
}

/// Draw `m` instances from `dist` and label them with `fstar`.
pub fn labeled_sample(
    dist: &Distribution,
    fstar: &Concept,
    m: usize,
    rng: &mut crate::rng::Rng,
) -> Result<Vec<Example>> {
    let mut out = Vec::with_capacity(m);
    for x in dist.sample(m, rng) {
        let y = fstar.label(&x)?;
        out.push(Example { x, y });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept::Labeling;

    /// Direct transcription of the reaction-set definition over explicit
    /// finite sets: the oracle the fast paths are checked against.
    fn oracle_reaction(x: usize, h: &Labeling, delta: &[Vec<usize>]) -> Vec<usize> {
        if h.get(x) {
            return vec![x];
        }
        let positives: Vec<usize> = delta[x].iter().copied().filter(|&j| h.get(j)).collect();
        if positives.is_empty() {
            vec![x]
        } else {
            positives
        }
    }

    fn oracle_improvement(x: usize, h: &Labeling, f: &Labeling, delta: &[Vec<usize>]) -> bool {
        oracle_reaction(x, h, delta).iter().any(|&j| h.get(j) != f.get(j))
    }

    fn oracle_strategic(x: usize, h: &Labeling, f: &Labeling, delta: &[Vec<usize>]) -> bool {
        oracle_reaction(x, h, delta).iter().any(|&j| h.get(j) != f.get(x))
    }

    fn explicit(n: usize, sets: &[Vec<usize>]) -> ImprovementMap {
        let pairs: Vec<(usize, Vec<usize>)> =
            sets.iter().cloned().enumerate().collect();
        ImprovementMap::explicit(n, &pairs).unwrap()
    }

    #[test]
    fn accepted_point_stays_put() {
        let h = Concept::Finite(Labeling::from_bytes(&[1, 1]).unwrap());
        let d = explicit(2, &[vec![1], vec![0]]);
        assert_eq!(reaction_set(&0.into(), &h, &d).unwrap(), vec![Instance::Node(0)]);
    }

    #[test]
    fn rejected_point_moves_to_accepted_neighbor() {
        // Delta(x0) = {x0, x1}, h rejects x0 and accepts x1.
        let h = Concept::Finite(Labeling::from_bytes(&[0, 1]).unwrap());
        let d = explicit(2, &[vec![0, 1], vec![]]);
        assert_eq!(reaction_set(&0.into(), &h, &d).unwrap(), vec![Instance::Node(1)]);
    }

    #[test]
    fn rejected_point_with_no_exit_stays() {
        let h = Concept::Finite(Labeling::from_bytes(&[0, 1]).unwrap());
        let d = explicit(2, &[vec![0], vec![]]);
        assert_eq!(reaction_set(&0.into(), &h, &d).unwrap(), vec![Instance::Node(0)]);
    }

    /// Three nodes; h accepts x0 and x2, truth accepts x1 and x2. A rejected
    /// x1 with Delta(x1) = everything moves to a positive of h — and the
    /// improvement loss fires because x0 is a false positive destination,
    /// while the strategic loss is clean because the truth at x1 is 1 and
    /// every destination is accepted.
    #[test]
    fn improvement_and_strategic_losses_diverge() {
        let h = Labeling::from_bytes(&[1, 0, 1]).unwrap();
        let f = Labeling::from_bytes(&[0, 1, 1]).unwrap();
        let sets = vec![vec![], vec![0, 1, 2], vec![]];

        assert!(oracle_improvement(1, &h, &f, &sets));
        assert!(!oracle_strategic(1, &h, &f, &sets));

        let hc = Concept::Finite(h);
        let fc = Concept::Finite(f);
        let d = explicit(3, &sets);
        assert!(improvement_loss(&1.into(), &hc, &fc, &d).unwrap());
        assert!(!strategic_loss(&1.into(), &hc, &fc, &d).unwrap());
    }

    #[test]
    fn fast_paths_match_oracle_exhaustively() {
        // Every (h, f, Delta) combination on a 3-node space with Delta sets
        // drawn from a fixed pool; the library path must match the oracle
        // transcription at every node.
        let labelings = crate::concept::all_labelings(3);
        let pools: Vec<Vec<usize>> = vec![vec![], vec![0], vec![1, 2], vec![0, 1, 2]];
        for h in &labelings {
            for f in &labelings {
                for (a, da) in pools.iter().enumerate() {
                    let sets = vec![da.clone(), pools[(a + 1) % 4].clone(), pools[(a + 2) % 4].clone()];
                    let d = explicit(3, &sets);
                    let hc = Concept::Finite(h.clone());
                    let fc = Concept::Finite(f.clone());
                    for x in 0..3 {
                        assert_eq!(
                            improvement_loss(&x.into(), &hc, &fc, &d).unwrap(),
                            oracle_improvement(x, h, f, &sets),
                        );
                        assert_eq!(
                            strategic_loss(&x.into(), &hc, &fc, &d).unwrap(),
                            oracle_strategic(x, h, f, &sets),
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn immovable_improvement_loss_is_zero_one_loss() {
        let labelings = crate::concept::all_labelings(3);
        let d = ImprovementMap::immovable(3);
        for h in &labelings {
            for f in &labelings {
                let hc = Concept::Finite(h.clone());
                let fc = Concept::Finite(f.clone());
                for x in 0..3 {
                    let xi: Instance = x.into();
                    let z = zero_one_loss(&xi, &hc, &fc).unwrap();
                    assert_eq!(improvement_loss(&xi, &hc, &fc, &d).unwrap(), z);
                    assert_eq!(strategic_loss(&xi, &hc, &fc, &d).unwrap(), z);
                }
            }
        }
    }

    #[test]
    fn finite_population_loss_is_exact_weighted_sum() {
        // h wrong only at x2 (weight 0.5) once movement is accounted for.
        let h = Concept::Finite(Labeling::from_bytes(&[1, 0, 0]).unwrap());
        let f = Concept::Finite(Labeling::from_bytes(&[1, 0, 1]).unwrap());
        let d = ImprovementMap::immovable(3);
        let dist = Distribution::new(
            DistKind::FiniteWeighted { weights: vec![0.25, 0.25, 0.5] },
            7,
        );
        let est = population_loss(LossKind::Improvement, &h, &f, &d, &dist, 0, 0).unwrap();
        assert!(est.exact);
        assert!((est.mean - 0.5).abs() < 1e-15);
    }

    #[test]
    fn monte_carlo_population_loss_matches_exact_1d() {
        // Memorizing two positives of [0.2, 0.8] under a 0.1 ball: the bad
        // set is the positive region further than 0.1 from both points.
        let h = Concept::FiniteSupport { points: vec![vec![0.3], vec![0.6]], tol: 1e-9 };
        let f = Concept::Interval { lo: 0.2, hi: 0.8 };
        let r = 0.1;
        let exact = exact_population_loss_1d(&h, &f, r, &Distribution::new(DistKind::UniformInterval, 5)).unwrap();
        // Bad set: [0.2,0.8] minus [0.2,0.4] minus [0.5,0.7] = (0.4,0.5) + (0.7,0.8].
        assert!(exact.exact);
        assert!((exact.mean - 0.2).abs() < 1e-12);

        let dist = Distribution::new(DistKind::UniformInterval, 5);
        let mc = population_loss(
            LossKind::Improvement,
            &h,
            &f,
            &ImprovementMap::Ball { r },
            &dist,
            200_000,
            0,
        )
        .unwrap();
        let sigma = mc.stderr.unwrap();
        assert!((mc.mean - exact.mean).abs() < 5.0 * sigma.max(1e-4));
    }

    #[test]
    fn punctured_pair_pointwise_losses() {
        // h punctured at b' = 0.6, truth punctured at b = 0.4, radius 1/2.
        // Every h-negative within 1/2 of the false positive {0.4} loses.
        let h = Concept::PuncturedInterval { lo: 0.25, hi: 0.75, hole: 0.6 };
        let f = Concept::PuncturedInterval { lo: 0.25, hi: 0.75, hole: 0.4 };
        let d = ImprovementMap::Ball { r: 0.5 };
        // x = 0.1: rejected, can reach [0.25, 0.6) — including 0.4.
        assert!(improvement_loss(&0.1.into(), &h, &f, &d).unwrap());
        // x = 0.95: reachable positives are (0.6, 0.75] — no false positive.
        assert!(!improvement_loss(&0.95.into(), &h, &f, &d).unwrap());
        // x = 0.6 (h's own puncture): truth says positive, reachable, and
        // 0.4 is within 0.2 — loses.
        assert!(improvement_loss(&0.6.into(), &h, &f, &d).unwrap());
        // Accepted points never lose against an equal-support truth except
        // at the punctures.
        assert!(!improvement_loss(&0.5.into(), &h, &f, &d).unwrap());
        assert!(improvement_loss(&0.4.into(), &h, &f, &d).unwrap());
    }

    #[test]
    fn cap_improvement_loss_on_circle() {
        use std::f64::consts::PI;
        // h: margin halfspace around angle pi/2; truth: plain halfspace same
        // direction. Rejected points near the h-boundary move into h's cap;
        // everything they can reach is truly positive, so no loss — but a
        // truth rotated far away turns those same moves into losses.
        let w = crate::space::circle_point(PI / 2.0);
        let h = Concept::MarginHalfspace { w: w.clone(), margin: 0.2 };
        let f_aligned = Concept::Halfspace { w: w.clone() };
        let d = ImprovementMap::Cap { r: 0.3 };
        // x at angle 0.1: h-negative (0.1 < margin boundary 0.2), can reach
        // h's cap [0.2, pi - 0.2]; aligned truth accepts [0, pi].
        let x = Instance::Point(crate::space::circle_point(0.1));
        assert!(!improvement_loss(&x, &h, &f_aligned, &d).unwrap());
        // Truth rotated to center -pi/2 rejects all of h's cap.
        let f_opposed = Concept::Halfspace { w: vec![0.0, -1.0] };
        assert!(improvement_loss(&x, &h, &f_opposed, &d).unwrap());
        // Far h-negative point that cannot reach the cap: stays, and the
        // loss equals its own true label (here: truly positive, rejected).
        let far = Instance::Point(crate::space::circle_point(-PI / 2.0));
        assert_eq!(
            improvement_loss(&far, &h, &f_opposed, &d).unwrap(),
            f_opposed.label(&far).unwrap()
        );
    }

    #[test]
    fn labeled_sampling_is_reproducible() {
        let dist = Distribution::new(DistKind::UniformInterval, 99);
        let f = Concept::Interval { lo: 0.0, hi: 0.5 };
        let a = labeled_sample(&dist, &f, 20, &mut substream(99, 1)).unwrap();
        let b = labeled_sample(&dist, &f, 20, &mut substream(99, 1)).unwrap();
        assert_eq!(a, b);
        for ex in &a {
            assert_eq!(ex.y, ex.x.scalar().unwrap() <= 0.5);
        }
    }
}
