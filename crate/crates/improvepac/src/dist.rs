//! Sampling distributions over instance spaces.
//!
//! A [`Distribution`] pairs a shape ([`DistKind`]) with the seed of the
//! experiment that owns it; per-trial generators are derived through
//! [`crate::rng::substream`], so a distribution embedded in a config is fully
//! reproducible.

use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::space::{Instance, InstanceSpace};

/// The shape of a sampling distribution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistKind {
    /// Weighted atoms on a finite space; weights must be nonnegative and sum
    /// to 1 (within 1e-9).
    FiniteWeighted { weights: Vec<f64> },
    /// Uniform on `[0, 1]` (1-d Euclidean).
    UniformInterval,
    /// Uniform on the unit sphere in `R^d`.
    UniformSphere { d: usize },
    /// Standard Gaussian on `R^d`.
    Gaussian { d: usize },
    /// All mass on a single continuous point.
    PointMass { point: Vec<f64> },
    /// Finite mixture; component weights must be nonnegative and sum to 1.
    Mixture { components: Vec<(f64, DistKind)> },
}

/// A seeded sampling distribution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub kind: DistKind,
    pub rng_seed: u64,
}

impl Distribution {
    pub fn new(kind: DistKind, rng_seed: u64) -> Self {
        Distribution { kind, rng_seed }
    }

    /// Uniform distribution on an `n`-node finite space.
    pub fn uniform_finite(n: usize, rng_seed: u64) -> Self {
        Distribution::new(DistKind::FiniteWeighted { weights: vec![1.0 / n as f64; n] }, rng_seed)
    }

    /// The instance space this distribution samples from.
    pub fn space(&self) -> InstanceSpace {
        self.kind.space()
    }

    /// Validate weights and nesting.
    pub fn validate(&self) -> Result<()> {
        self.kind.validate()
    }

    /// Draw one instance.
    pub fn draw(&self, rng: &mut Rng) -> Instance {
        self.kind.draw(rng)
    }

    /// Draw `m` instances.
    pub fn sample(&self, m: usize, rng: &mut Rng) -> Vec<Instance> {
        (0..m).map(|_| self.draw(rng)).collect()
    }
}

impl DistKind {
    fn space(&self) -> InstanceSpace {
        match self {
            DistKind::FiniteWeighted { weights } => InstanceSpace::Finite { n: weights.len() },
            DistKind::UniformInterval => InstanceSpace::Euclidean { d: 1 },
            DistKind::UniformSphere { d } => InstanceSpace::Sphere { d: *d },
            DistKind::Gaussian { d } => InstanceSpace::Euclidean { d: *d },
            DistKind::PointMass { point } => InstanceSpace::Euclidean { d: point.len() },
            DistKind::Mixture { components } => components
                .first()
                .map(|(_, k)| k.space())
                .unwrap_or(InstanceSpace::Euclidean { d: 0 }),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            DistKind::FiniteWeighted { weights } => {
                if weights.is_empty() {
                    return Err(Error::param("finite distribution needs at least one atom"));
                }
                if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
                    return Err(Error::param("weights must be finite and nonnegative"));
                }
                let total: f64 = weights.iter().sum();
                if (total - 1.0).abs() > 1e-9 {
                    return Err(Error::param(format!("weights sum to {total}, expected 1")));
                }
                Ok(())
            }
            DistKind::UniformInterval => Ok(()),
            DistKind::UniformSphere { d } | DistKind::Gaussian { d } => {
                if *d == 0 {
                    Err(Error::param("dimension must be positive"))
                } else {
                    Ok(())
                }
            }
            DistKind::PointMass { point } => {
                if point.is_empty() || point.iter().any(|v| !v.is_finite()) {
                    Err(Error::param("point mass needs a finite, nonempty coordinate vector"))
                } else {
                    Ok(())
                }
            }
            DistKind::Mixture { components } => {
                if components.is_empty() {
                    return Err(Error::param("mixture needs at least one component"));
                }
                let total: f64 = components.iter().map(|(w, _)| w).sum();
                if (total - 1.0).abs() > 1e-9 {
                    return Err(Error::param(format!("mixture weights sum to {total}, expected 1")));
                }
                let space = components[0].1.space();
                for (w, k) in components {
                    if !w.is_finite() || *w < 0.0 {
                        return Err(Error::param("mixture weights must be finite and nonnegative"));
                    }
                    if k.space() != space {
                        return Err(Error::space("mixture components must share one space"));
                    }
                    k.validate()?;
                }
                Ok(())
            }
        }
    }

    fn draw(&self, rng: &mut Rng) -> Instance {
        match self {
            DistKind::FiniteWeighted { weights } => {
                // Inverse-CDF walk; exact enough for the atom counts we use
                // and keeps the draw a single uniform variate.
                let mut u: f64 = rng.gen::<f64>();
                for (i, w) in weights.iter().enumerate() {
                    if u < *w {
                        return Instance::Node(i);
                    }
                    u -= w;
                }
                Instance::Node(weights.len() - 1)
            }
            DistKind::UniformInterval => Instance::Point(vec![rng.gen::<f64>()]),
            DistKind::UniformSphere { d } => {
                loop {
                    let v: Vec<f64> = (0..*d).map(|_| rng.sample(StandardNormal)).collect();
                    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if norm > 1e-12 {
                        return Instance::Point(v.into_iter().map(|x| x / norm).collect());
                    }
                }
            }
            DistKind::Gaussian { d } => {
                Instance::Point((0..*d).map(|_| rng.sample(StandardNormal)).collect())
            }
            DistKind::PointMass { point } => Instance::Point(point.clone()),
            DistKind::Mixture { components } => {
                let mut u: f64 = rng.gen::<f64>();
                for (w, k) in components {
                    if u < *w {
                        return k.draw(rng);
                    }
                    u -= w;
                }
                components.last().expect("validated nonempty").1.draw(rng)
            }
        }
    }
}
