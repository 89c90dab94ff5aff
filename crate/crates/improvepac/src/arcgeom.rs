//! Angular arithmetic on the unit circle.
//!
//! The sphere-based experiments live on the circle (`d = 2`), where every
//! relevant positive region is a *cap* — an arc of points within some angular
//! half-width of a center direction — and every reachability set is an arc.
//! This module provides exact arc arithmetic: cap membership, the arc of
//! admissible improvement destinations inside a cap, and worst-case angular
//! distances over an arc. The geometric modules build their closed-form loss
//! evaluations on these primitives.

use std::f64::consts::PI;

use crate::concept::Concept;
use crate::error::{Error, Result};

/// Wrap an angle to `(-pi, pi]`.
pub fn wrap_pi(a: f64) -> f64 {
    let w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

/// Angular distance in `[0, pi]`.
pub fn ang_dist(a: f64, b: f64) -> f64 {
    wrap_pi(a - b).abs()
}

/// Angle of a 2-d vector.
pub fn angle_of(v: &[f64]) -> Result<f64> {
    if v.len() != 2 {
        return Err(Error::space("circle geometry requires 2-d vectors"));
    }
    if v[0] == 0.0 && v[1] == 0.0 {
        return Err(Error::param("zero vector has no direction"));
    }
    Ok(v[1].atan2(v[0]))
}

/// A closed cap on the circle: `{phi : ang_dist(phi, center) <= half_width}`.
///
/// `half_width = 0` is the single point `center`; `half_width >= pi` is the
/// whole circle. Negative half-widths denote the empty cap.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cap {
    pub center: f64,
    pub half_width: f64,
}

impl Cap {
    pub fn contains(&self, phi: f64) -> bool {
        ang_dist(phi, self.center) <= self.half_width
    }

    pub fn is_empty(&self) -> bool {
        self.half_width < 0.0
    }

    /// The positive region of a (margin) halfspace concept in 2-d, as a cap.
    ///
    /// A halfspace `<w, x> >= 0` accepts the cap of half-width `pi/2` around
    /// `w`; an angular margin shrinks the half-width to `pi/2 - margin`.
    pub fn from_concept(h: &Concept) -> Result<Cap> {
        match h {
            Concept::Halfspace { w } => {
                Ok(Cap { center: angle_of(w)?, half_width: PI / 2.0 })
            }
            Concept::MarginHalfspace { w, margin } => {
                Ok(Cap { center: angle_of(w)?, half_width: PI / 2.0 - margin })
            }
            _ => Err(Error::unsupported("no cap region for this concept kind")),
        }
    }
}

/// A directed arc `[lo, hi]` (with `lo <= hi`) in the universal cover
/// centered on some reference direction; produced by [`reaction_arc`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    /// Reference direction subtracted out of the coordinates.
    pub center: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Arc {
    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    /// Largest angular distance from any point of the arc to direction `t`.
    ///
    /// The distance function is piecewise linear over the cover with peaks of
    /// height `pi` at the antipode of `t`, so the maximum is attained at an
    /// endpoint or at an antipode falling inside the arc.
    pub fn max_ang_dist_to(&self, t: f64) -> f64 {
        let dt = wrap_pi(t - self.center);
        let mut m = ang_dist(self.lo, dt).max(ang_dist(self.hi, dt));
        for k in [-1.0, 0.0, 1.0] {
            let antipode = dt + PI + 2.0 * PI * k;
            if self.lo <= antipode && antipode <= self.hi {
                m = PI;
            }
        }
        m
    }

    /// Whether every point of the arc lies inside `cap`.
    pub fn within(&self, cap: &Cap) -> bool {
        !cap.is_empty() && self.max_ang_dist_to(cap.center) <= cap.half_width
    }
}

/// The arc of improvement destinations: `{phi' : ang_dist(phi', phi) <= r}`
/// intersected with `cap`, or `None` when the intersection is empty.
///
/// Exactness requires the intersection to be a single arc, which holds
/// whenever `cap.half_width + r <= pi`; wider combinations are rejected.
pub fn reaction_arc(phi: f64, cap: &Cap, r: f64) -> Result<Option<Arc>> {
    if cap.is_empty() {
        return Ok(None);
    }
    if cap.half_width + r > PI {
        return Err(Error::unsupported(
            "cap half-width plus improvement radius exceeds pi; intersection may wrap",
        ));
    }
    let dx = wrap_pi(phi - cap.center);
    let lo = (dx - r).max(-cap.half_width);
    let hi = (dx + r).min(cap.half_width);
    if lo > hi {
        Ok(None)
    } else {
        Ok(Some(Arc { center: cap.center, lo, hi }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrapping_and_distance() {
        assert!((wrap_pi(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_pi(-2.5 * PI) + 0.5 * PI).abs() < 1e-12);
        assert!((ang_dist(0.1, 2.0 * PI - 0.1) - 0.2).abs() < 1e-12);
        assert!((ang_dist(-PI / 2.0, PI / 2.0) - PI).abs() < 1e-12);
    }

    #[test]
    fn cap_membership_matches_concept_labels() {
        let h = Concept::MarginHalfspace { w: vec![1.0, 0.0], margin: 0.3 };
        let cap = Cap::from_concept(&h).unwrap();
        for k in 0..720 {
            let phi = 2.0 * PI * k as f64 / 720.0;
            let x = crate::space::circle_point(phi);
            assert_eq!(
                h.label(&crate::space::Instance::Point(x)).unwrap(),
                cap.contains(phi),
                "disagreement at angle {phi}"
            );
        }
    }

    #[test]
    fn reaction_arc_clips_to_cap() {
        let cap = Cap { center: 0.0, half_width: 1.0 };
        // Point outside the cap but within reach: arc clipped at the cap edge.
        let arc = reaction_arc(1.2, &cap, 0.5).unwrap().unwrap();
        assert!((arc.lo - 0.7).abs() < 1e-12);
        assert!((arc.hi - 1.0).abs() < 1e-12);
        // Too far to reach.
        assert!(reaction_arc(1.51, &cap, 0.5).unwrap().is_none());
        // Interior point: arc clipped on neither side.
        let arc = reaction_arc(0.2, &cap, 0.5).unwrap().unwrap();
        assert!((arc.lo + 0.3).abs() < 1e-12 && (arc.hi - 0.7).abs() < 1e-12);
    }

    #[test]
    fn reaction_arc_wraps_are_rejected() {
        let cap = Cap { center: 0.0, half_width: 3.0 };
        assert!(reaction_arc(0.0, &cap, 1.0).is_err());
    }

    #[test]
    fn arc_within_cap_checks_worst_point() {
        let target = Cap { center: 0.4, half_width: 0.5 };
        let inside = Arc { center: 0.0, lo: 0.0, hi: 0.6 };
        assert!(inside.within(&target));
        let poking = Arc { center: 0.0, lo: -0.2, hi: 0.6 };
        assert!(!poking.within(&target));
    }

    #[test]
    fn max_ang_dist_catches_interior_antipode() {
        // Arc spanning nearly the whole circle around 0; distance to the
        // direction pi peaks at pi in the interior (at 0), not the endpoints.
        let arc = Arc { center: 0.0, lo: -2.0, hi: 2.0 };
        assert!((arc.max_ang_dist_to(PI) - PI).abs() < 1e-12);
        // And to direction 0 the maximum is at an endpoint.
        assert!((arc.max_ang_dist_to(0.0) - 2.0).abs() < 1e-12);
    }
}
