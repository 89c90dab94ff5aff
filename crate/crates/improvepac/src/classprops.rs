//! Structural properties of finite concept classes.
//!
//! The consistent-learner guarantees in [`crate::proper`] hinge on whether a
//! class always, sometimes, or never offers a *least* consistent concept —
//! one whose positive set is contained in every other consistent concept's.
//! This module provides the checkers:
//!
//! * [`closure`] — the intersection of all concepts containing a point set
//!   (the whole space when none does);
//! * [`is_intersection_closed`] — every closure is itself a concept;
//! * [`is_minimally_consistent`] — every realizable sample has a least
//!   consistent concept;
//! * [`is_nearly_minimally_consistent`] — the same, required only for
//!   samples that contain at least one negative example;
//! * [`vc_dimension`] — largest shattered subset, by direct enumeration.
//!
//! The properties form a chain: intersection-closed implies minimally
//! consistent implies nearly minimally consistent. When the last one *fails*,
//! the failure witness converts into a concrete hard learning problem via
//! [`hardness_world`]: the witness's negative point may move anywhere, and no
//! consistent learner can beat population loss `1/|S|` against an adversarial
//! choice of target concept.
//!
//! All checkers enumerate subsets exhaustively and are guarded to small
//! spaces; witnesses are minimal in (subset size, lexicographic order).

use itertools::Itertools;

use crate::concept::{ConceptClass, Labeling};
use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::improvement::ImprovementMap;

/// Largest space the closure-based checkers will enumerate (2^n subsets).
const MAX_CLOSURE_N: usize = 16;
/// Largest space the consistency checkers will enumerate (2^n subsets, each
/// labeled by every concept).
const MAX_CONSISTENCY_N: usize = 12;
/// Largest space for VC computation.
const MAX_VC_N: usize = 20;

// ---------------------------------------------------------------------------
// Reports and witnesses
// ---------------------------------------------------------------------------

/// A realizable labeled sample on which a consistency property fails.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    /// Class index of the concept that labeled the sample.
    pub fstar: usize,
    /// The labeled sample, ascending by node.
    pub sample: Vec<(usize, bool)>,
}

impl Witness {
    /// Nodes of the sample's negative examples.
    pub fn negatives(&self) -> Vec<usize> {
        self.sample.iter().filter(|(_, y)| !y).map(|(x, _)| *x).collect()
    }

    /// Distinct nodes appearing in the sample.
    pub fn support(&self) -> Vec<usize> {
        self.sample.iter().map(|(x, _)| *x).collect()
    }
}

/// Outcome of a consistency property check.
#[derive(Clone, Debug, PartialEq)]
pub struct PropertyReport {
    pub holds: bool,
    /// First failing sample in (size, lexicographic) order, when `!holds`.
    pub witness: Option<Witness>,
}

/// Outcome of the intersection-closedness check.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosureReport {
    pub holds: bool,
    /// First point set whose closure is not a concept, with that closure.
    pub witness: Option<(Vec<usize>, Labeling)>,
}

/// Result of searching the consistent set for a least element.
#[derive(Clone, Debug, PartialEq)]
pub enum LeastOutcome {
    /// Class index of the least consistent concept.
    Least(usize),
    /// Consistent concepts exist but none is contained in all others.
    NoLeast { consistent: Vec<usize> },
    /// The sample is not realizable by the class.
    NoneConsistent,
}

// ---------------------------------------------------------------------------
// Closures and intersection-closedness
// ---------------------------------------------------------------------------

/// The closure of a point set: the intersection of every concept whose
/// positive set contains `s`, or the all-positive labeling when no concept
/// contains `s`.
pub fn closure(cls: &ConceptClass, s: &[usize]) -> Result<Labeling> {
    let n = cls.n();
    for &x in s {
        if x >= n {
            return Err(Error::space(format!("closure point {x} out of range for n={n}")));
        }
    }
    let mut acc: Option<Labeling> = None;
    for h in cls.iter() {
        if s.iter().all(|&x| h.get(x)) {
            acc = Some(match acc {
                None => h.clone(),
                Some(a) => a.intersect(h),
            });
        }
    }
    Ok(acc.unwrap_or_else(|| Labeling::full(n)))
}

/// Whether every point set's closure is itself a concept of the class.
///
/// This is the closure-operator formulation and is strictly stronger than
/// closure under pairwise intersection (see
/// [`is_pairwise_intersection_closed`]): a class can contain all pairwise
/// intersections yet lack the closure of a set no concept contains.
pub fn is_intersection_closed(cls: &ConceptClass) -> Result<ClosureReport> {
    let n = cls.n();
    if n > MAX_CLOSURE_N {
        return Err(Error::param(format!(
            "intersection-closedness enumeration supports n <= {MAX_CLOSURE_N}, got {n}"
        )));
    }
    for size in 0..=n {
        for s in (0..n).combinations(size) {
            let c = closure(cls, &s)?;
            if cls.index_of(&c).is_none() {
                return Ok(ClosureReport { holds: false, witness: Some((s, c)) });
            }
        }
    }
    Ok(ClosureReport { holds: true, witness: None })
}

/// Weaker cross-check: the intersection of every *pair* of concepts is a
/// concept. Implied by [`is_intersection_closed`], not equivalent to it.
pub fn is_pairwise_intersection_closed(cls: &ConceptClass) -> (bool, Option<(usize, usize)>) {
    for i in 0..cls.len() {
        for j in (i + 1)..cls.len() {
            let meet = cls.get(i).intersect(cls.get(j));
            if cls.index_of(&meet).is_none() {
                return (false, Some((i, j)));
            }
        }
    }
    (true, None)
}

// ---------------------------------------------------------------------------
// Least consistent concepts
// ---------------------------------------------------------------------------

/// Search the concepts consistent with `sample` for a least element.
pub fn least_consistent(cls: &ConceptClass, sample: &[(usize, bool)]) -> Result<LeastOutcome> {
    for &(x, _) in sample {
        if x >= cls.n() {
            return Err(Error::space(format!("sample node {x} out of range for n={}", cls.n())));
        }
    }
    let consistent = cls.consistent_indices(sample);
    if consistent.is_empty() {
        return Ok(LeastOutcome::NoneConsistent);
    }
    // A least element, if any, has minimal support; verify the containments.
    let &cand = consistent
        .iter()
        .min_by_key(|&&i| cls.get(i).support_size())
        .expect("nonempty consistent set");
    let ok = consistent.iter().all(|&i| cls.get(cand).is_subset_of(cls.get(i)));
    if ok {
        Ok(LeastOutcome::Least(cand))
    } else {
        Ok(LeastOutcome::NoLeast { consistent })
    }
}

fn consistency_property(
    cls: &ConceptClass,
    require_negative: bool,
) -> Result<PropertyReport> {
    let n = cls.n();
    if n > MAX_CONSISTENCY_N {
        return Err(Error::param(format!(
            "consistency enumeration supports n <= {MAX_CONSISTENCY_N}, got {n}"
        )));
    }
    // Samples ordered by (support size, lexicographic support, labeler index):
    // the first failure is a minimal witness.
    for size in 1..=n {
        for s in (0..n).combinations(size) {
            for (fi, f) in cls.iter().enumerate() {
                let sample: Vec<(usize, bool)> = s.iter().map(|&x| (x, f.get(x))).collect();
                if require_negative && sample.iter().all(|&(_, y)| y) {
                    continue;
                }
                if let LeastOutcome::NoLeast { .. } = least_consistent(cls, &sample)? {
                    return Ok(PropertyReport {
                        holds: false,
                        witness: Some(Witness { fstar: fi, sample }),
                    });
                }
            }
        }
    }
    Ok(PropertyReport { holds: true, witness: None })
}

/// Whether every realizable sample admits a least consistent concept.
pub fn is_minimally_consistent(cls: &ConceptClass) -> Result<PropertyReport> {
    consistency_property(cls, false)
}

/// Whether every realizable sample *containing a negative example* admits a
/// least consistent concept.
pub fn is_nearly_minimally_consistent(cls: &ConceptClass) -> Result<PropertyReport> {
    consistency_property(cls, true)
}

// ---------------------------------------------------------------------------
// VC dimension
// ---------------------------------------------------------------------------

/// VC dimension by direct enumeration: the largest `k` such that some
/// `k`-subset realizes all `2^k` labelings. Capped by `log2(|H|)`, since a
/// class cannot shatter more points than that.
pub fn vc_dimension(cls: &ConceptClass) -> Result<usize> {
    let n = cls.n();
    if n > MAX_VC_N {
        return Err(Error::param(format!("VC enumeration supports n <= {MAX_VC_N}, got {n}")));
    }
    let log_cap = (usize::BITS - 1 - cls.len().leading_zeros()) as usize; // floor(log2 |H|)
    let mut vc = 0;
    for k in 1..=n.min(log_cap) {
        let mut shattered_some = false;
        for s in (0..n).combinations(k) {
            let mut seen = std::collections::HashSet::new();
            for h in cls.iter() {
                let pattern: u32 = s
                    .iter()
                    .enumerate()
                    .map(|(bit, &x)| (h.get(x) as u32) << bit)
                    .sum();
                seen.insert(pattern);
            }
            if seen.len() == 1 << k {
                shattered_some = true;
                break;
            }
        }
        if shattered_some {
            vc = k;
        } else {
            break;
        }
    }
    Ok(vc)
}

// ---------------------------------------------------------------------------
// Hard worlds from failed witnesses
// ---------------------------------------------------------------------------

/// Convert a failed nearly-minimal-consistency witness into the improvement
/// world on which every consistent learner suffers: the witness's first
/// negative point may improve to *anywhere*, every other point is immovable,
/// and the instance distribution is uniform over the witness sample's nodes.
///
/// Against a worst-case consistent target, any consistent hypothesis then
/// loses at least the mass of that negative point, i.e. `1/|S|`.
pub fn hardness_world(
    n: usize,
    witness: &Witness,
    rng_seed: u64,
) -> Result<(ImprovementMap, Distribution)> {
    let negatives = witness.negatives();
    let x_minus = *negatives
        .first()
        .ok_or_else(|| Error::param("hardness world needs a witness with a negative example"))?;
    let support = witness.support();
    if support.is_empty() {
        return Err(Error::param("hardness world needs a nonempty witness sample"));
    }
    let mut weights = vec![0.0; n];
    for &x in &support {
        if x >= n {
            return Err(Error::space(format!("witness node {x} out of range for n={n}")));
        }
        weights[x] = 1.0 / support.len() as f64;
    }
    let delta = ImprovementMap::anywhere_for(n, x_minus)?;
    let dist = Distribution::new(crate::dist::DistKind::FiniteWeighted { weights }, rng_seed);
    Ok((delta, dist))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept::{all_classes, ConceptClass};

    /// `h1 = {x0}`, `h2 = {x1}`: minimally consistent but not
    /// intersection-closed.
    fn two_point_split() -> ConceptClass {
        ConceptClass::from_bytes(2, &[vec![1, 0], vec![0, 1]]).unwrap()
    }

    /// Leave-one-out on three points (`h_i` rejects exactly `x_i`): nearly
    /// minimally consistent but not minimally consistent.
    fn leave_one_out_3() -> ConceptClass {
        ConceptClass::from_bytes(3, &[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap()
    }

    /// Independent shattering oracle: collect realized label patterns.
    fn oracle_shatters(cls: &ConceptClass, s: &[usize]) -> bool {
        let mut seen = std::collections::HashSet::new();
        for h in cls.iter() {
            let pat: Vec<bool> = s.iter().map(|&x| h.get(x)).collect();
            seen.insert(pat);
        }
        seen.len() == 1 << s.len()
    }

    /// Independent VC oracle over all subsets, no log cap, no early exit.
    fn oracle_vc(cls: &ConceptClass) -> usize {
        let n = cls.n();
        let mut best = 0;
        for mask in 0u32..1 << n {
            let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if oracle_shatters(cls, &s) {
                best = best.max(s.len());
            }
        }
        best
    }

    #[test]
    fn closure_of_contained_sets() {
        let cls = two_point_split();
        // {x0} is contained only in h1, so its closure is h1.
        assert_eq!(closure(&cls, &[0]).unwrap(), *cls.get(0));
        // Nothing contains {x0, x1}: closure is the full space.
        assert_eq!(closure(&cls, &[0, 1]).unwrap(), Labeling::full(2));
        // The empty set is contained in everything: closure is the overall
        // intersection, here empty.
        assert_eq!(closure(&cls, &[]).unwrap(), Labeling::empty(2));
    }

    #[test]
    fn split_class_is_not_intersection_closed_but_is_minimal() {
        let cls = two_point_split();
        let ic = is_intersection_closed(&cls).unwrap();
        assert!(!ic.holds);
        // Minimal witness: the empty set, whose closure (the overall
        // intersection, i.e. the empty concept) is missing from the class.
        let (s, c) = ic.witness.unwrap();
        assert!(s.is_empty());
        assert_eq!(c, Labeling::empty(2));

        assert!(is_minimally_consistent(&cls).unwrap().holds);
        assert!(is_nearly_minimally_consistent(&cls).unwrap().holds);
    }

    #[test]
    fn leave_one_out_is_nearly_minimal_only() {
        let cls = leave_one_out_3();
        assert!(!is_intersection_closed(&cls).unwrap().holds);

        let mc = is_minimally_consistent(&cls).unwrap();
        assert!(!mc.holds);
        // First failing sample in (size, lex, labeler) order: the single
        // positive {(x0, 1)} labeled by h2 — both h2 and h3 are consistent
        // with incomparable supports.
        let w = mc.witness.unwrap();
        assert_eq!(w.fstar, 1);
        assert_eq!(w.sample, vec![(0, true)]);

        assert!(is_nearly_minimally_consistent(&cls).unwrap().holds);
    }

    #[test]
    fn least_consistent_outcomes() {
        let cls = leave_one_out_3();
        // A negative pins the rejecting concept: only h2 rejects x1.
        assert_eq!(
            least_consistent(&cls, &[(1, false), (0, true)]).unwrap(),
            LeastOutcome::Least(1)
        );
        // Positives only: h2 and h3 both accept x0, neither least.
        assert_eq!(
            least_consistent(&cls, &[(0, true)]).unwrap(),
            LeastOutcome::NoLeast { consistent: vec![1, 2] }
        );
        // Contradictory sample: nothing consistent.
        assert_eq!(
            least_consistent(&cls, &[(0, true), (0, false)]).unwrap(),
            LeastOutcome::NoneConsistent
        );
    }

    #[test]
    fn intervals_with_empty_concept_are_intersection_closed() {
        // All intervals [i, j] on a 5-point line, plus the empty concept.
        let n = 5;
        let mut rows: Vec<Vec<u8>> = vec![vec![0; n]];
        for i in 0..n {
            for j in i..n {
                rows.push((0..n).map(|k| (i <= k && k <= j) as u8).collect());
            }
        }
        let cls = ConceptClass::from_bytes(n, &rows).unwrap();
        assert_eq!(cls.len(), 16);
        assert!(is_intersection_closed(&cls).unwrap().holds);
        assert!(is_pairwise_intersection_closed(&cls).0);
        // And the chain gives minimal consistency for free.
        // (n = 5 is within the consistency enumeration cap.)
        assert!(is_minimally_consistent(&cls).unwrap().holds);
    }

    #[test]
    fn pairwise_closed_but_not_closure_closed() {
        // {x0}, {x1}, and the empty set: all pairwise intersections are the
        // empty concept (present), but the closure of {x0, x1} is the full
        // space, which is absent.
        let cls = ConceptClass::from_bytes(2, &[vec![1, 0], vec![0, 1], vec![0, 0]]).unwrap();
        assert!(is_pairwise_intersection_closed(&cls).0);
        let ic = is_intersection_closed(&cls).unwrap();
        assert!(!ic.holds);
        let (s, c) = ic.witness.unwrap();
        assert_eq!(s, vec![0, 1]);
        assert_eq!(c, Labeling::full(2));
    }

    #[test]
    fn property_chain_on_all_three_point_classes() {
        let mut saw_ic = 0;
        let mut saw_mc_not_ic = 0;
        let mut saw_nmc_not_mc = 0;
        let mut saw_none = 0;
        for cls in all_classes(3) {
            let ic = is_intersection_closed(&cls).unwrap().holds;
            let mc = is_minimally_consistent(&cls).unwrap().holds;
            let nmc = is_nearly_minimally_consistent(&cls).unwrap().holds;
            if ic {
                assert!(mc, "intersection-closed class must be minimally consistent: {cls:?}");
                saw_ic += 1;
            }
            if mc {
                assert!(nmc, "minimally consistent class must be nearly so: {cls:?}");
                if !ic {
                    saw_mc_not_ic += 1;
                }
            } else if nmc {
                saw_nmc_not_mc += 1;
            } else {
                saw_none += 1;
            }
            // Subset-closedness implies pairwise closedness.
            if ic {
                assert!(is_pairwise_intersection_closed(&cls).0);
            }
        }
        // The hierarchy is strict: every level is inhabited on three points.
        assert!(saw_ic > 0 && saw_mc_not_ic > 0 && saw_nmc_not_mc > 0 && saw_none > 0);
    }

    #[test]
    fn vc_matches_oracle_on_all_small_classes() {
        for cls in all_classes(2) {
            assert_eq!(vc_dimension(&cls).unwrap(), oracle_vc(&cls));
        }
        for cls in all_classes(3) {
            assert_eq!(vc_dimension(&cls).unwrap(), oracle_vc(&cls));
        }
    }

    #[test]
    fn vc_frozen_values() {
        assert_eq!(vc_dimension(&leave_one_out_3()).unwrap(), 1);
        assert_eq!(vc_dimension(&two_point_split()).unwrap(), 1);
        // All 16 labelings of 4 points shatter everything.
        let full = ConceptClass::new(4, crate::concept::all_labelings(4)).unwrap();
        assert_eq!(vc_dimension(&full).unwrap(), 4);
        // A single concept shatters nothing.
        let one = ConceptClass::from_bytes(3, &[vec![1, 0, 1]]).unwrap();
        assert_eq!(vc_dimension(&one).unwrap(), 0);
    }

    #[test]
    fn hardness_world_shape() {
        let w = Witness { fstar: 0, sample: vec![(0, true), (2, false)] };
        let (delta, dist) = hardness_world(3, &w, 7).unwrap();
        // The negative point can go anywhere; others are stuck.
        assert_eq!(delta.alternatives(2).unwrap(), &[0, 1, 2]);
        assert!(delta.alternatives(0).unwrap().is_empty());
        match &dist.kind {
            crate::dist::DistKind::FiniteWeighted { weights } => {
                assert_eq!(weights, &vec![0.5, 0.0, 0.5]);
            }
            k => panic!("expected finite weights, got {k:?}"),
        }
        // No negative example: no hard world.
        let all_pos = Witness { fstar: 0, sample: vec![(0, true)] };
        assert!(hardness_world(3, &all_pos, 7).is_err());
    }
}
