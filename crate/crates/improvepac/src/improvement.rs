//! Improvement maps: which alternatives each instance can move to.
//!
//! An improvement map `Delta` assigns every instance `x` a (possibly empty)
//! set `Delta(x)` of instances it could present instead of itself. The
//! classification dynamics built on top (see [`crate::loss`]) assume an
//! individual rejected at `x` moves into `Delta(x)` whenever doing so gets it
//! accepted, choosing adversarially among the accepted alternatives.
//!
//! Finite spaces use explicit per-node sets or graph neighborhoods;
//! continuous spaces use metric balls (Euclidean) or angular caps (sphere).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::space::{angle_between, euclidean_dist, Instance};

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

/// A simple undirected graph on nodes `0..n`, used as an improvement
/// structure (`Delta(x)` = neighbors of `x`) by the online module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    max_degree: usize,
}

impl Graph {
    /// Build a graph from an edge list; rejects loops, duplicate edges, and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::space(format!("edge ({a},{b}) out of range for n={n}")));
            }
            if a == b {
                return Err(Error::param(format!("self-loop at node {a}")));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(Error::param(format!("duplicate edge ({a},{b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        let max_degree = adj.iter().map(Vec::len).max().unwrap_or(0);
        Ok(Graph { n, adj, max_degree })
    }

    /// A star: `leaves` outer nodes each adjacent to a central hub, which is
    /// the last node (index `leaves`).
    pub fn star(leaves: usize) -> Graph {
        let center = leaves;
        let edges: Vec<(usize, usize)> = (0..leaves).map(|i| (i, center)).collect();
        Graph::new(leaves + 1, &edges).expect("star construction is valid")
    }

    /// Number of nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Neighbors of `i`, ascending.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    /// Degree of node `i`.
    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    /// Maximum degree over all nodes.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Edge list `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for &b in &self.adj[a] {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Improvement maps
// ---------------------------------------------------------------------------

/// The set-valued map `x -> Delta(x)` of admissible alternatives.
#[derive(Clone, Debug)]
pub enum ImprovementMap {
    /// Finite space, explicit per-node sets. Missing keys mean `Delta(x)` is
    /// empty; sets may or may not contain the node itself.
    Explicit { n: usize, sets: BTreeMap<usize, Vec<usize>> },
    /// Finite space, graph neighborhoods: `Delta(x)` = neighbors of `x`
    /// (never contains `x` itself).
    Neighborhood(Graph),
    /// Euclidean ball of radius `r`: `Delta(x) = {x' : |x' - x| <= r}`.
    Ball { r: f64 },
    /// Angular cap of radius `r` on the unit sphere:
    /// `Delta(x) = {x' : angle(x, x') <= r}`.
    Cap { r: f64 },
}

impl ImprovementMap {
    /// Explicit map where no instance can move at all.
    pub fn immovable(n: usize) -> ImprovementMap {
        ImprovementMap::Explicit { n, sets: BTreeMap::new() }
    }

    /// Explicit map from `(node, alternatives)` pairs; validates ranges.
    pub fn explicit(n: usize, sets: &[(usize, Vec<usize>)]) -> Result<ImprovementMap> {
        let mut map = BTreeMap::new();
        for (x, alts) in sets {
            if *x >= n {
                return Err(Error::space(format!("improvement set for node {x} out of range")));
            }
            for &a in alts {
                if a >= n {
                    return Err(Error::space(format!(
                        "alternative {a} of node {x} out of range for n={n}"
                    )));
                }
            }
            if map.insert(*x, alts.clone()).is_some() {
                return Err(Error::param(format!("duplicate improvement set for node {x}")));
            }
        }
        Ok(ImprovementMap::Explicit { n, sets: map })
    }

    /// The hard map for a designated node: `x_minus` may move anywhere in the
    /// `n`-node space, every other node is stuck.
    pub fn anywhere_for(n: usize, x_minus: usize) -> Result<ImprovementMap> {
        ImprovementMap::explicit(n, &[(x_minus, (0..n).collect())])
    }

    /// Alternatives of a finite-space node. Errors on continuous maps.
    pub fn alternatives(&self, x: usize) -> Result<&[usize]> {
        match self {
            ImprovementMap::Explicit { n, sets } => {
                if x >= *n {
                    return Err(Error::space(format!("node {x} out of range for n={n}")));
                }
                Ok(sets.get(&x).map(Vec::as_slice).unwrap_or(&[]))
            }
            ImprovementMap::Neighborhood(g) => {
                if x >= g.n() {
                    return Err(Error::space(format!("node {x} out of range for n={}", g.n())));
                }
                Ok(g.neighbors(x))
            }
            _ => Err(Error::unsupported("alternatives() requires a finite improvement map")),
        }
    }

    /// Whether `to` is an admissible alternative of `from`.
    pub fn admits(&self, from: &Instance, to: &Instance) -> Result<bool> {
        match self {
            ImprovementMap::Explicit { .. } | ImprovementMap::Neighborhood(_) => {
                let (f, t) = (from.node()?, to.node()?);
                Ok(self.alternatives(f)?.contains(&t))
            }
            ImprovementMap::Ball { r } => {
                Ok(euclidean_dist(from.point()?, to.point()?) <= *r)
            }
            ImprovementMap::Cap { r } => Ok(angle_between(from.point()?, to.point()?) <= *r),
        }
    }

    /// Metric radius of a continuous map.
    pub fn radius(&self) -> Option<f64> {
        match self {
            ImprovementMap::Ball { r } | ImprovementMap::Cap { r } => Some(*r),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_construction_validates() {
        assert!(Graph::new(3, &[(0, 1), (1, 2)]).is_ok());
        assert!(Graph::new(3, &[(0, 3)]).is_err());
        assert!(Graph::new(3, &[(1, 1)]).is_err());
        assert!(Graph::new(3, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn star_shape() {
        let g = Graph::star(5);
        assert_eq!(g.n(), 6);
        assert_eq!(g.max_degree(), 5);
        assert_eq!(g.degree(5), 5);
        for leaf in 0..5 {
            assert_eq!(g.neighbors(leaf), &[5]);
        }
        assert_eq!(g.neighbors(5), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn explicit_map_defaults_to_empty() {
        let d = ImprovementMap::explicit(4, &[(2, vec![0, 3])]).unwrap();
        assert_eq!(d.alternatives(2).unwrap(), &[0, 3]);
        assert!(d.alternatives(0).unwrap().is_empty());
        assert!(d.alternatives(4).is_err());
    }

    #[test]
    fn anywhere_map_covers_whole_space() {
        let d = ImprovementMap::anywhere_for(3, 1).unwrap();
        assert_eq!(d.alternatives(1).unwrap(), &[0, 1, 2]);
        assert!(d.alternatives(0).unwrap().is_empty());
    }

    #[test]
    fn ball_and_cap_admit_by_metric() {
        let ball = ImprovementMap::Ball { r: 0.5 };
        assert!(ball.admits(&0.2.into(), &0.7.into()).unwrap());
        assert!(!ball.admits(&0.2.into(), &0.71.into()).unwrap());

        let cap = ImprovementMap::Cap { r: 0.3 };
        let a = Instance::Point(crate::space::circle_point(1.0));
        let b = Instance::Point(crate::space::circle_point(1.29));
        let c = Instance::Point(crate::space::circle_point(1.31));
        assert!(cap.admits(&a, &b).unwrap());
        assert!(!cap.admits(&a, &c).unwrap());
    }
}
