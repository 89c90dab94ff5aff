//! Exact interval arithmetic on the line.
//!
//! The 1-d geometric experiments (memorization, coverability, the punctured
//! interval family) admit closed-form population losses. This module supplies
//! the machinery: [`IntervalSet`] is a normalized union of closed intervals,
//! and [`Region1`] is a concept's positive set represented as intervals minus
//! finitely many punctured points.
//!
//! Boundary semantics: set operations treat intervals as closed and rely on
//! closure arguments for distance queries (a punctured point never changes
//! the distance to a nondegenerate interval). Knife-edge coincidences — a
//! query point whose ball touches a region in exactly one punctured point —
//! resolve toward the closure; all measures are unaffected because those
//! configurations have measure zero.

use crate::concept::Concept;
use crate::error::{Error, Result};

/// A finite union of closed intervals, kept sorted, disjoint, and merged
/// (touching intervals coalesce). Degenerate intervals `[a, a]` are allowed
/// and represent isolated points.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalSet {
    ivs: Vec<(f64, f64)>,
}

impl IntervalSet {
    /// The empty set.
    pub fn empty() -> Self {
        IntervalSet { ivs: Vec::new() }
    }

    /// A single closed interval `[lo, hi]` (empty if `hi < lo`).
    pub fn interval(lo: f64, hi: f64) -> Self {
        if hi < lo {
            IntervalSet::empty()
        } else {
            IntervalSet { ivs: vec![(lo, hi)] }
        }
    }

    /// Normalize an arbitrary list of closed intervals.
    pub fn from_intervals(raw: &[(f64, f64)]) -> Self {
        let mut ivs: Vec<(f64, f64)> = raw.iter().copied().filter(|(a, b)| b >= a).collect();
        ivs.sort_by(|x, y| x.partial_cmp(y).expect("finite interval endpoints"));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(ivs.len());
        for (a, b) in ivs {
            match out.last_mut() {
                Some((_, pb)) if a <= *pb => *pb = pb.max(b),
                _ => out.push((a, b)),
            }
        }
        IntervalSet { ivs: out }
    }

    /// The component intervals, sorted and disjoint.
    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.ivs
    }

    pub fn is_empty(&self) -> bool {
        self.ivs.is_empty()
    }

    /// Membership (closed endpoints).
    pub fn contains(&self, x: f64) -> bool {
        self.ivs.iter().any(|&(a, b)| a <= x && x <= b)
    }

    /// Total length (degenerate components contribute zero).
    pub fn measure(&self) -> f64 {
        self.ivs.iter().map(|(a, b)| b - a).sum()
    }

    /// Distance from `x` to the set (`inf` over the set; infinite if empty).
    pub fn dist(&self, x: f64) -> f64 {
        self.ivs
            .iter()
            .map(|&(a, b)| {
                if x < a {
                    a - x
                } else if x > b {
                    x - b
                } else {
                    0.0
                }
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Union of two sets.
    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut all = self.ivs.clone();
        all.extend_from_slice(&other.ivs);
        IntervalSet::from_intervals(&all)
    }

    /// Intersection of two sets.
    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for &(a, b) in &self.ivs {
            for &(c, d) in &other.ivs {
                if d < a {
                    continue;
                }
                if c > b {
                    break;
                }
                out.push((a.max(c), b.min(d)));
            }
        }
        IntervalSet::from_intervals(&out)
    }

    /// Set difference `self \ other` under closed-interval semantics: the
    /// closure of the pointwise difference. A component fully covered by
    /// `other` vanishes; partial covers leave closed remnants.
    pub fn subtract(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for &(a, b) in &self.ivs {
            let mut cur = a;
            let mut alive = true;
            for &(c, d) in &other.ivs {
                if d < cur {
                    continue;
                }
                if c > b {
                    break;
                }
                if c <= cur && d >= b {
                    // Component fully covered.
                    alive = false;
                    break;
                }
                if c > cur {
                    out.push((cur, c));
                }
                if d >= cur {
                    cur = cur.max(d);
                }
                if cur > b {
                    alive = false;
                    break;
                }
            }
            if alive && cur <= b && (cur < b || cur == a) {
                out.push((cur, b));
            }
        }
        // Remnants of positive length survive; degenerate remnants survive
        // only when the source component itself was degenerate and uncovered.
        let filtered: Vec<(f64, f64)> = out
            .into_iter()
            .filter(|&(a, b)| b > a || self.ivs.iter().any(|&(x, y)| x == a && y == b))
            .collect();
        IntervalSet::from_intervals(&filtered)
    }

    /// Minkowski dilation by `[-r, r]`.
    pub fn dilate(&self, r: f64) -> IntervalSet {
        let grown: Vec<(f64, f64)> = self.ivs.iter().map(|&(a, b)| (a - r, b + r)).collect();
        IntervalSet::from_intervals(&grown)
    }
}

/// The positive set of a 1-d concept: closed intervals minus finitely many
/// punctured points (each puncture lying within some component).
#[derive(Clone, Debug, PartialEq)]
pub struct Region1 {
    ivs: IntervalSet,
    holes: Vec<f64>,
}

impl Region1 {
    /// Extract the positive region of a 1-d concept.
    pub fn from_concept(h: &Concept) -> Result<Region1> {
        match h {
            Concept::Interval { lo, hi } => {
                Ok(Region1 { ivs: IntervalSet::interval(*lo, *hi), holes: Vec::new() })
            }
            Concept::PuncturedInterval { lo, hi, hole } => {
                let ivs = IntervalSet::interval(*lo, *hi);
                let holes = if ivs.contains(*hole) { vec![*hole] } else { Vec::new() };
                Ok(Region1 { ivs, holes })
            }
            Concept::FiniteSupport { points, tol: _ } => {
                let mut raw = Vec::with_capacity(points.len());
                for p in points {
                    if p.len() != 1 {
                        return Err(Error::space("finite support region requires 1-d points"));
                    }
                    raw.push((p[0], p[0]));
                }
                Ok(Region1 { ivs: IntervalSet::from_intervals(&raw), holes: Vec::new() })
            }
            _ => Err(Error::unsupported("no 1-d region for this concept kind")),
        }
    }

    /// Interval closure of the region.
    pub fn closure(&self) -> &IntervalSet {
        &self.ivs
    }

    /// The punctured points.
    pub fn holes(&self) -> &[f64] {
        &self.holes
    }

    /// Membership: inside the closure and not punctured.
    pub fn contains(&self, x: f64) -> bool {
        self.ivs.contains(x) && !self.holes.contains(&x)
    }

    /// Distance from `x` to the region. Punctures never change the distance
    /// to a nondegenerate component; a punctured degenerate component is
    /// empty and is skipped.
    pub fn dist(&self, x: f64) -> f64 {
        self.ivs
            .intervals()
            .iter()
            .filter(|&&(a, b)| !(a == b && self.holes.contains(&a)))
            .map(|&(a, b)| if x < a { a - x } else if x > b { x - b } else { 0.0 })
            .fold(f64::INFINITY, f64::min)
    }

    /// True when the region has no points at all.
    pub fn is_empty(&self) -> bool {
        self.ivs
            .intervals()
            .iter()
            .all(|&(a, b)| a == b && self.holes.contains(&a))
    }
}

/// The false-positive set of `h` against `f`: points labeled positive by `h`
/// and negative by `f`, split into an interval part and isolated points.
///
/// The interval part is the closed difference of the two closures (punctures
/// of `h` falling inside it are measure- and distance-irrelevant, except that
/// a degenerate remnant equal to a puncture of `h` is dropped). The isolated
/// points are punctures of `f` that `h` labels positive.
pub fn false_positive_parts(h: &Region1, f: &Region1) -> (IntervalSet, Vec<f64>) {
    let raw = h.closure().subtract(f.closure());
    let ivs = IntervalSet::from_intervals(
        &raw.intervals()
            .iter()
            .copied()
            .filter(|&(a, b)| !(a == b && h.holes().contains(&a)))
            .collect::<Vec<_>>(),
    );
    let mut points: Vec<f64> = f
        .holes()
        .iter()
        .copied()
        .filter(|&p| h.contains(p))
        .collect();
    points.sort_by(|a, b| a.partial_cmp(b).expect("finite punctures"));
    points.dedup();
    (ivs, points)
}

/// Distance from `x` to the union of an interval part and isolated points.
pub fn dist_to_parts(x: f64, ivs: &IntervalSet, points: &[f64]) -> f64 {
    let di = ivs.dist(x);
    let dp = points.iter().map(|p| (x - p).abs()).fold(f64::INFINITY, f64::min);
    di.min(dp)
}
