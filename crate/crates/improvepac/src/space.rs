//! Instance spaces and instances.
//!
//! Everything in the library is parameterized by an [`InstanceSpace`]: either
//! a finite set of indexed points (graphs, explicit worlds, enumerable concept
//! classes) or a continuous domain (`R^d`, or the unit sphere in `R^d` for
//! angle-based classifiers). An [`Instance`] is a point of such a space.
//!
//! Keeping the space explicit lets every operation validate that its inputs
//! live in the same world and report a [`crate::Error::SpaceMismatch`]
//! instead of silently computing nonsense.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The domain that instances are drawn from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InstanceSpace {
    /// A finite space of `n` points addressed by index `0..n`.
    Finite { n: usize },
    /// Euclidean space `R^d`.
    Euclidean { d: usize },
    /// The unit sphere `{x in R^d : |x| = 1}`.
    Sphere { d: usize },
}

impl InstanceSpace {
    /// Number of points of a finite space, `None` for continuous spaces.
    pub fn len(&self) -> Option<usize> {
        match self {
            InstanceSpace::Finite { n } => Some(*n),
            _ => None,
        }
    }

    /// True for [`InstanceSpace::Finite`].
    pub fn is_finite(&self) -> bool {
        matches!(self, InstanceSpace::Finite { .. })
    }

    /// Ambient dimension for continuous spaces, `None` for finite ones.
    pub fn dim(&self) -> Option<usize> {
        match self {
            InstanceSpace::Finite { .. } => None,
            InstanceSpace::Euclidean { d } | InstanceSpace::Sphere { d } => Some(*d),
        }
    }

    /// Check that `x` is a valid instance of this space.
    pub fn validate(&self, x: &Instance) -> Result<()> {
        match (self, x) {
            (InstanceSpace::Finite { n }, Instance::Node(i)) => {
                if i < n {
                    Ok(())
                } else {
                    Err(Error::space(format!("node {i} out of range for n={n}")))
                }
            }
            (InstanceSpace::Euclidean { d }, Instance::Point(p)) => {
                if p.len() == *d {
                    Ok(())
                } else {
                    Err(Error::space(format!(
                        "point of dim {} in Euclidean space of dim {d}",
                        p.len()
                    )))
                }
            }
            (InstanceSpace::Sphere { d }, Instance::Point(p)) => {
                if p.len() != *d {
                    return Err(Error::space(format!(
                        "point of dim {} on sphere of dim {d}",
                        p.len()
                    )));
                }
                let norm2: f64 = p.iter().map(|v| v * v).sum();
                if (norm2 - 1.0).abs() < 1e-6 {
                    Ok(())
                } else {
                    Err(Error::space(format!("point with |x|^2 = {norm2} not on unit sphere")))
                }
            }
            _ => Err(Error::space("instance kind does not match space kind")),
        }
    }
}

/// A single point of an instance space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Instance {
    /// Index into a finite space.
    Node(usize),
    /// Coordinates in a continuous space.
    Point(Vec<f64>),
}

impl Instance {
    /// The node index, or a space-mismatch error for continuous points.
    pub fn node(&self) -> Result<usize> {
        match self {
            Instance::Node(i) => Ok(*i),
            Instance::Point(_) => Err(Error::space("expected a finite-space node")),
        }
    }

    /// The coordinate vector, or a space-mismatch error for nodes.
    pub fn point(&self) -> Result<&[f64]> {
        match self {
            Instance::Point(p) => Ok(p),
            Instance::Node(_) => Err(Error::space("expected a continuous-space point")),
        }
    }

    /// Scalar coordinate of a 1-dimensional point.
    pub fn scalar(&self) -> Result<f64> {
        let p = self.point()?;
        if p.len() == 1 {
            Ok(p[0])
        } else {
            Err(Error::space(format!("expected a 1-d point, got dim {}", p.len())))
        }
    }
}

impl From<usize> for Instance {
    fn from(i: usize) -> Self {
        Instance::Node(i)
    }
}

impl From<f64> for Instance {
    fn from(v: f64) -> Self {
        Instance::Point(vec![v])
    }
}

/// Euclidean distance between two coordinate vectors of equal dimension.
pub fn euclidean_dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Angle in radians between two unit vectors (clamped for fp safety).
pub fn angle_between(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    dot.clamp(-1.0, 1.0).acos()
}

/// Unit vector on the circle at the given angle (2-d convenience).
pub fn circle_point(angle: f64) -> Vec<f64> {
    vec![angle.cos(), angle.sin()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_space_validates_node_range() {
        let s = InstanceSpace::Finite { n: 3 };
        assert!(s.validate(&Instance::Node(2)).is_ok());
        assert!(s.validate(&Instance::Node(3)).is_err());
        assert!(s.validate(&Instance::Point(vec![0.0])).is_err());
    }

    #[test]
    fn euclidean_space_validates_dimension() {
        let s = InstanceSpace::Euclidean { d: 2 };
        assert!(s.validate(&Instance::Point(vec![0.5, -1.0])).is_ok());
        assert!(s.validate(&Instance::Point(vec![0.5])).is_err());
        assert!(s.validate(&Instance::Node(0)).is_err());
    }

    #[test]
    fn sphere_space_requires_unit_norm() {
        let s = InstanceSpace::Sphere { d: 2 };
        assert!(s.validate(&Instance::Point(circle_point(1.2))).is_ok());
        assert!(s.validate(&Instance::Point(vec![0.5, 0.5])).is_err());
    }

    #[test]
    fn distances_and_angles() {
        assert!((euclidean_dist(&[0.0, 0.0], &[3.0, 4.0]) - 5.0).abs() < 1e-12);
        let a = circle_point(0.3);
        let b = circle_point(1.1);
        assert!((angle_between(&a, &b) - 0.8).abs() < 1e-12);
    }
}
