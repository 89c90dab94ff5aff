//! JSON wire formats and fixture loading.
//!
//! Finite worlds travel as one document:
//!
//! ```json
//! {
//!   "n": 3,
//!   "concepts": [[0, 1, 1], [1, 0, 1], [1, 1, 0]],
//!   "delta": {"0": [1, 2], "1": [0], "2": [0]}
//! }
//! ```
//!
//! `n` is the number of points. `concepts` (optional) lists labelings as
//! 0/1 rows of length `n`. `delta` (optional) maps each point — JSON object
//! keys, so written as strings — to the points it can move to; omitted keys
//! mean the point cannot move. A symmetric, loop-free `delta` doubles as an
//! undirected graph adjacency.
//!
//! Continuous worlds (interval families, spread atoms, circle targets)
//! don't fit this schema; they are configured through the experiment
//! configuration documents defined alongside the run harness.
//!
//! Fixture files live in `fixtures/` at the repository root; the
//! `IMPROVEPAC_FIXTURES` environment variable overrides the directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::concept::ConceptClass;
use crate::dist::DistKind;
use crate::error::{Error, Result};
use crate::improvement::{Graph, ImprovementMap};

/// One finite world on `n` points: a concept class, an improvement map,
/// or both.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct WorldFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub concepts: Option<Vec<Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<BTreeMap<String, Vec<usize>>>,
}

impl WorldFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path.as_ref(), text)?;
        Ok(())
    }

    pub fn from_class(class: &ConceptClass) -> Self {
        Self {
            n: class.n(),
            concepts: Some(class.iter().map(|c| c.to_bytes()).collect()),
            delta: None,
        }
    }

    pub fn from_graph(graph: &Graph) -> Self {
        let delta = (0..graph.n())
            .filter(|&v| !graph.neighbors(v).is_empty())
            .map(|v| (v.to_string(), graph.neighbors(v).to_vec()))
            .collect();
        Self { n: graph.n(), concepts: None, delta: Some(delta) }
    }

    /// Attach an improvement map to a class document.
    pub fn with_delta(mut self, delta: &ImprovementMap) -> Result<Self> {
        match delta {
            ImprovementMap::Explicit { n, sets } => {
                if *n != self.n {
                    return Err(Error::space("improvement map covers a different point count"));
                }
                self.delta =
                    Some(sets.iter().map(|(&k, v)| (k.to_string(), v.clone())).collect());
                Ok(self)
            }
            ImprovementMap::Neighborhood(g) => {
                if g.n() != self.n {
                    return Err(Error::space("graph covers a different point count"));
                }
                self.delta = WorldFile::from_graph(g).delta;
                Ok(self)
            }
            _ => Err(Error::unsupported("only finite improvement maps serialize to JSON")),
        }
    }

    fn parsed_delta(&self) -> Result<BTreeMap<usize, Vec<usize>>> {
        let raw = self
            .delta
            .as_ref()
            .ok_or_else(|| Error::param("document has no \"delta\" field"))?;
        let mut out = BTreeMap::new();
        for (k, v) in raw {
            let i: usize = k
                .parse()
                .map_err(|_| Error::param(format!("delta key {k:?} is not a point index")))?;
            if i >= self.n {
                return Err(Error::param(format!("delta key {i} out of range for n={}", self.n)));
            }
            for &j in v {
                if j >= self.n {
                    return Err(Error::param(format!(
                        "delta target {j} out of range for n={}",
                        self.n
                    )));
                }
            }
            out.insert(i, v.clone());
        }
        Ok(out)
    }

    /// The document's concept class.
    pub fn class(&self) -> Result<ConceptClass> {
        let rows = self
            .concepts
            .as_ref()
            .ok_or_else(|| Error::param("document has no \"concepts\" field"))?;
        ConceptClass::from_bytes(self.n, rows)
    }

    /// The document's improvement map, as-is (not necessarily symmetric).
    pub fn improvement_map(&self) -> Result<ImprovementMap> {
        let sets = self.parsed_delta()?;
        let pairs: Vec<(usize, Vec<usize>)> = sets.into_iter().collect();
        ImprovementMap::explicit(self.n, &pairs)
    }

    /// The document's `delta` read as an undirected graph: must be
    /// symmetric and loop-free.
    pub fn graph(&self) -> Result<Graph> {
        let sets = self.parsed_delta()?;
        let mut edges = Vec::new();
        for (&i, targets) in &sets {
            for &j in targets {
                if j == i {
                    return Err(Error::param(format!("graph delta has a self-loop at {i}")));
                }
                let back = sets.get(&j).map(|v| v.contains(&i)).unwrap_or(false);
                if !back {
                    return Err(Error::param(format!(
                        "graph delta is not symmetric: {i} -> {j} has no reverse"
                    )));
                }
                if i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(self.n, &edges)
    }
}

/// Load a sampling distribution description from a JSON file.
pub fn load_dist_kind(path: impl AsRef<Path>) -> Result<DistKind> {
    let text = std::fs::read_to_string(path.as_ref())?;
    Ok(serde_json::from_str(&text)?)
}

/// Directory holding the shipped fixture files. The `IMPROVEPAC_FIXTURES`
/// environment variable overrides the default `fixtures/` next to the
/// current working directory.
pub fn fixtures_dir() -> PathBuf {
    match std::env::var_os("IMPROVEPAC_FIXTURES") {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from("fixtures"),
    }
}

/// Path of one shipped fixture.
pub fn fixture_path(name: &str) -> PathBuf {
    fixtures_dir().join(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::online::{star_world, StarVariant};

    #[test]
    fn world_file_round_trips_class_and_graph() {
        let (graph, class) = star_world(3, StarVariant::LeaveOneOut).unwrap();
        let doc = WorldFile::from_class(&class)
            .with_delta(&ImprovementMap::Neighborhood(graph.clone()))
            .unwrap();
        let text = serde_json::to_string(&doc).unwrap();
        let back: WorldFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.class().unwrap().len(), 3);
        let g = back.graph().unwrap();
        assert_eq!(g.edges(), graph.edges());
        assert_eq!(g.max_degree(), 3);
    }

    #[test]
    fn graph_reading_rejects_asymmetry_and_loops() {
        let asym: WorldFile =
            serde_json::from_str(r#"{"n": 2, "delta": {"0": [1]}}"#).unwrap();
        assert!(asym.graph().is_err());
        // The same document is a fine one-way improvement map.
        assert!(asym.improvement_map().is_ok());
        let looped: WorldFile =
            serde_json::from_str(r#"{"n": 2, "delta": {"0": [0, 1], "1": [0]}}"#).unwrap();
        assert!(looped.graph().is_err());
    }

    #[test]
    fn out_of_range_entries_are_rejected() {
        let bad_key: WorldFile =
            serde_json::from_str(r#"{"n": 2, "delta": {"7": [0]}}"#).unwrap();
        assert!(bad_key.improvement_map().is_err());
        let bad_target: WorldFile =
            serde_json::from_str(r#"{"n": 2, "delta": {"0": [5]}}"#).unwrap();
        assert!(bad_target.improvement_map().is_err());
        let unknown = serde_json::from_str::<WorldFile>(r#"{"n": 2, "bogus": 1}"#);
        assert!(unknown.is_err());
    }

    #[test]
    fn dist_kind_files_parse() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("dist.json");
        std::fs::write(
            &path,
            r#"{"kind": "mixture", "components": [
                [0.95, {"kind": "uniform_interval"}],
                [0.05, {"kind": "point_mass", "point": [2.0]}]
            ]}"#,
        )
        .unwrap();
        let kind = load_dist_kind(&path).unwrap();
        match kind {
            DistKind::Mixture { components } => {
                assert_eq!(components.len(), 2);
                assert!((components[0].0 - 0.95).abs() < 1e-15);
            }
            other => panic!("unexpected kind {other:?}"),
        }
    }

    #[test]
    fn fixture_dir_override() {
        // Not a concurrency-safe pattern in general; tests in this binary
        // that touch the variable run in this one place.
        std::env::set_var("IMPROVEPAC_FIXTURES", "/tmp/elsewhere");
        assert_eq!(fixture_path("a.json"), PathBuf::from("/tmp/elsewhere/a.json"));
        std::env::remove_var("IMPROVEPAC_FIXTURES");
        assert_eq!(fixture_path("a.json"), PathBuf::from("fixtures/a.json"));
    }
}
