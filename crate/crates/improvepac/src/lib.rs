//! Simulation library for classification dynamics where rejected individuals
//! can *improve*: move to a nearby admissible position and be re-evaluated.
//!
//! The model couples a binary classifier `h` with an improvement map `Delta`
//! assigning each instance the set of alternatives it could move to. A
//! rejected individual relocates into the accepted part of its improvement
//! set whenever that part is nonempty; the library measures the losses this
//! induces and simulates the learning problems built on top of them.
//!
//! # Layout
//!
//! * [`space`], [`concept`], [`improvement`], [`dist`] — instance spaces,
//!   classifiers (explicit labelings and closed-form rules), improvement
//!   maps, and seeded sampling distributions.
//! * [`loss`] — reaction sets, the improvement/strategic/0-1 losses, and
//!   exact or Monte-Carlo population losses.
//! * [`classprops`] — structural checkers for finite concept classes
//!   (closures, intersection-closedness, least consistent concepts, VC
//!   dimension) and the hard improvement map they imply when they fail.
//! * [`proper`] — the consistent proper learner that prefers least
//!   consistent hypotheses, and its sample-complexity experiments.
//! * [`ballworld`] — memorization under metric-ball improvements: covering
//!   experiments, spread-point adversaries, the punctured interval family.
//! * [`noisy`] — label noise on the circle: empirical risk minimization over
//!   halfspaces, margin shrinking, and worst-case noisy improvement loss.
//! * [`online`] — improvement-aware online learners on graphs, mistake
//!   bounds, and adversarial sequences.
//! * [`harness`] — seeded experiment configs, reports, and the acceptance
//!   suites; [`schema`] — the JSON wire formats and fixture loading.
//!
//! Everything randomized is driven by explicit seeds through
//! [`rng::substream`]; identical configs reproduce identical reports.

pub mod arcgeom;
pub mod ballworld;
pub mod classprops;
pub mod concept;
pub mod dist;
pub mod error;
pub mod improvement;
pub mod loss;
pub mod noisy;
pub mod online;
pub mod proper;
pub mod region1d;
pub mod rng;
pub mod harness;
pub mod schema;
pub mod space;

pub use concept::{Concept, ConceptClass, Example, Labeling};
pub use dist::{DistKind, Distribution};
pub use error::{Error, Result};
pub use improvement::{Graph, ImprovementMap};
pub use loss::{improvement_loss, population_loss, reaction_set, strategic_loss, LossKind};
pub use space::{Instance, InstanceSpace};
