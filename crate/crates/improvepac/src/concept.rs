//! Concepts (binary classifiers) and finite concept classes.
//!
//! Two representations coexist:
//!
//! * [`Labeling`] — an explicit bit-labeling of a finite space, the currency
//!   of the enumeration-based modules (class properties, consistent learners,
//!   online games).
//! * [`Concept`] — a closed-form rule over a finite or continuous space
//!   (intervals, punctured intervals, halfspaces, margin halfspaces, finite
//!   positive supports), the currency of the geometric modules.
//!
//! A [`ConceptClass`] is an ordered list of distinct labelings of one finite
//! space; order matters because several learners break ties by class order.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::space::{euclidean_dist, Instance, InstanceSpace};

// ---------------------------------------------------------------------------
// Labelings of a finite space
// ---------------------------------------------------------------------------

/// A binary labeling of the finite space `{0, .., n-1}`.
///
/// Equivalently: the set of positively labeled nodes. Supports the set
/// operations the class-property checkers need (subset tests, intersections).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Labeling {
    n: usize,
    bits: FixedBitSet,
}

impl Labeling {
    /// All-negative labeling on `n` nodes.
    pub fn empty(n: usize) -> Self {
        Labeling { n, bits: FixedBitSet::with_capacity(n) }
    }

    /// All-positive labeling on `n` nodes.
    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Labeling { n, bits }
    }

    /// Labeling from explicit bits.
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut l = Labeling::empty(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            l.bits.set(i, b);
        }
        l
    }

    /// Labeling from 0/1 bytes (the wire format of fixtures).
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut l = Labeling::empty(bytes.len());
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                0 => {}
                1 => l.bits.set(i, true),
                other => {
                    return Err(Error::param(format!("labeling entry must be 0 or 1, got {other}")))
                }
            }
        }
        Ok(l)
    }

    /// Labeling on `n` nodes whose positives are the set bits of `mask`.
    ///
    /// Only meaningful for `n <= 32`; used by exhaustive enumerations.
    pub fn from_mask(mask: u32, n: usize) -> Self {
        assert!(n <= 32, "mask-based construction supports n <= 32");
        let mut l = Labeling::empty(n);
        for i in 0..n {
            if mask >> i & 1 == 1 {
                l.bits.set(i, true);
            }
        }
        l
    }

    /// Labeling positive exactly on the listed nodes.
    pub fn from_positives(n: usize, positives: &[usize]) -> Result<Self> {
        let mut l = Labeling::empty(n);
        for &i in positives {
            if i >= n {
                return Err(Error::space(format!("positive node {i} out of range for n={n}")));
            }
            l.bits.set(i, true);
        }
        Ok(l)
    }

    /// Number of nodes in the underlying space.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Label of node `i`.
    pub fn get(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    /// Set the label of node `i`.
    pub fn set(&mut self, i: usize, y: bool) {
        self.bits.set(i, y);
    }

    /// Flip the label of node `i`.
    pub fn flip(&mut self, i: usize) {
        self.bits.toggle(i);
    }

    /// Iterator over positively labeled nodes, ascending.
    pub fn positives(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    /// Number of positively labeled nodes.
    pub fn support_size(&self) -> usize {
        self.bits.count_ones(..)
    }

    /// True when every positive of `self` is a positive of `other`.
    pub fn is_subset_of(&self, other: &Labeling) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits.is_subset(&other.bits)
    }

    /// Node-wise AND: the intersection of the two positive sets.
    pub fn intersect(&self, other: &Labeling) -> Labeling {
        debug_assert_eq!(self.n, other.n);
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Labeling { n: self.n, bits }
    }

    /// Bits as a 0/1 byte vector (the wire format of fixtures).
    pub fn to_bytes(&self) -> Vec<u8> {
        (0..self.n).map(|i| self.get(i) as u8).collect()
    }

    /// True when `self` labels every example of `sample` correctly.
    pub fn consistent_with(&self, sample: &[(usize, bool)]) -> bool {
        sample.iter().all(|&(x, y)| self.get(x) == y)
    }
}

impl std::fmt::Debug for Labeling {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

/// All `2^n` labelings of an `n`-node space, in mask order.
///
/// Guarded to small `n`; intended for exhaustive tests and enumerations.
pub fn all_labelings(n: usize) -> Vec<Labeling> {
    assert!(n <= 20, "exhaustive labeling enumeration supports n <= 20");
    (0u32..1 << n).map(|m| Labeling::from_mask(m, n)).collect()
}

// ---------------------------------------------------------------------------
// Finite concept classes
// ---------------------------------------------------------------------------

/// An ordered class of distinct labelings of one finite space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConceptClass {
    n: usize,
    concepts: Vec<Labeling>,
}

impl ConceptClass {
    /// Build a class, validating non-emptiness, a common `n`, and distinctness.
    pub fn new(n: usize, concepts: Vec<Labeling>) -> Result<Self> {
        if concepts.is_empty() {
            return Err(Error::param("concept class must be nonempty"));
        }
        let mut seen: HashSet<&Labeling> = HashSet::new();
        for c in &concepts {
            if c.n() != n {
                return Err(Error::space(format!(
                    "concept over {} nodes in class over {n} nodes",
                    c.n()
                )));
            }
            if !seen.insert(c) {
                return Err(Error::param(format!("duplicate concept {c:?} in class")));
            }
        }
        Ok(ConceptClass { n, concepts })
    }

    /// Class from 0/1 byte rows (the wire format of fixtures).
    pub fn from_bytes(n: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let concepts = rows
            .iter()
            .map(|r| {
                if r.len() != n {
                    return Err(Error::param(format!(
                        "concept row of length {} in class with n={n}",
                        r.len()
                    )));
                }
                Labeling::from_bytes(r)
            })
            .collect::<Result<Vec<_>>>()?;
        ConceptClass::new(n, concepts)
    }

    /// Number of nodes of the underlying finite space.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of concepts.
    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    /// True when the class has no concepts (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    /// Concept at class index `i`.
    pub fn get(&self, i: usize) -> &Labeling {
        &self.concepts[i]
    }

    /// Iterator over concepts in class order.
    pub fn iter(&self) -> impl Iterator<Item = &Labeling> {
        self.concepts.iter()
    }

    /// Class index of `h`, if `h` is in the class.
    pub fn index_of(&self, h: &Labeling) -> Option<usize> {
        self.concepts.iter().position(|c| c == h)
    }

    /// Indices of concepts consistent with a labeled finite sample, in class
    /// order.
    pub fn consistent_indices(&self, sample: &[(usize, bool)]) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.concepts[i].consistent_with(sample)).collect()
    }

    /// The underlying space.
    pub fn space(&self) -> InstanceSpace {
        InstanceSpace::Finite { n: self.n }
    }
}

/// Every nonempty class over an `n`-node space, for tiny `n`.
///
/// There are `2^(2^n) - 1` such classes, so this is guarded to `n <= 3`
/// (at most 255 classes of at most 8 concepts each).
pub fn all_classes(n: usize) -> Vec<ConceptClass> {
    assert!(n <= 3, "exhaustive class enumeration supports n <= 3");
    let labelings = all_labelings(n);
    let total = 1u32 << labelings.len();
    (1..total)
        .map(|subset| {
            let concepts = labelings
                .iter()
                .enumerate()
                .filter(|(i, _)| subset >> i & 1 == 1)
                .map(|(_, l)| l.clone())
                .collect();
            ConceptClass::new(n, concepts).expect("enumerated classes are valid")
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Rule-based concepts
// ---------------------------------------------------------------------------

/// A binary classifier given by a closed-form rule.
#[derive(Clone, Debug, PartialEq)]
pub enum Concept {
    /// Explicit labeling of a finite space.
    Finite(Labeling),
    /// `[lo, hi]` on the line: positive iff `lo <= x <= hi`.
    Interval { lo: f64, hi: f64 },
    /// `[lo, hi]` minus the single point `hole`.
    PuncturedInterval { lo: f64, hi: f64, hole: f64 },
    /// Positive exactly on a finite list of points (within `tol`).
    FiniteSupport { points: Vec<Vec<f64>>, tol: f64 },
    /// Homogeneous halfspace: positive iff `<w, x> >= 0`.
    Halfspace { w: Vec<f64> },
    /// Halfspace shrunk by an angular margin, for unit-sphere instances:
    /// positive iff the angle between `x` and `w` is at most `pi/2 - margin`,
    /// i.e. iff `<w, x> >= sin(margin)` for unit `w`.
    MarginHalfspace { w: Vec<f64>, margin: f64 },
}

impl Concept {
    /// Label of instance `x`. The caller is responsible for `x` belonging to
    /// the concept's space; dimension mismatches are reported as errors.
    pub fn label(&self, x: &Instance) -> Result<bool> {
        match self {
            Concept::Finite(l) => {
                let i = x.node()?;
                if i >= l.n() {
                    return Err(Error::space(format!("node {i} out of range for n={}", l.n())));
                }
                Ok(l.get(i))
            }
            Concept::Interval { lo, hi } => {
                let v = x.scalar()?;
                Ok(*lo <= v && v <= *hi)
            }
            Concept::PuncturedInterval { lo, hi, hole } => {
                let v = x.scalar()?;
                Ok(*lo <= v && v <= *hi && v != *hole)
            }
            Concept::FiniteSupport { points, tol } => {
                let p = x.point()?;
                Ok(points.iter().any(|q| q.len() == p.len() && euclidean_dist(q, p) <= *tol))
            }
            Concept::Halfspace { w } => {
                let p = x.point()?;
                if p.len() != w.len() {
                    return Err(Error::space("halfspace dimension mismatch"));
                }
                Ok(dot(w, p) >= 0.0)
            }
            Concept::MarginHalfspace { w, margin } => {
                let p = x.point()?;
                if p.len() != w.len() {
                    return Err(Error::space("margin halfspace dimension mismatch"));
                }
                Ok(dot(w, p) >= margin.sin())
            }
        }
    }

    /// The memorizing classifier: positive exactly on the positives of a
    /// labeled continuous sample (duplicates collapse).
    pub fn memorize(sample: &[(Vec<f64>, bool)], tol: f64) -> Concept {
        let mut points: Vec<Vec<f64>> = Vec::new();
        for (x, y) in sample {
            if *y && !points.iter().any(|q| q == x) {
                points.push(x.clone());
            }
        }
        Concept::FiniteSupport { points, tol }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A labeled example over any instance space.
#[derive(Clone, Debug, PartialEq)]
pub struct Example {
    pub x: Instance,
    pub y: bool,
}
