//! Python bindings for the experiment library.
//!
//! Exposes the finite-world core — concept classes, improvement maps, the
//! three loss semantics, the property checkers — plus the config runner
//! and the acceptance suite, so results can be scripted and cross-checked
//! from Python without shelling out to the CLI.

use std::collections::BTreeMap;
use std::path::PathBuf;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use improvepac::classprops::{
    is_intersection_closed, is_minimally_consistent, is_nearly_minimally_consistent,
    vc_dimension,
};
use improvepac::concept::{Concept, ConceptClass};
use improvepac::dist::{DistKind, Distribution};
use improvepac::error::Error;
use improvepac::harness::{self, ExperimentConfig, SuiteBundle};
use improvepac::improvement::ImprovementMap;
use improvepac::loss::{population_loss, LossKind};
use improvepac::online::{star_adversary_game, OnlineAlgorithm, StarVariant};
use improvepac::proper::fit_proper;
use improvepac::schema::WorldFile;

fn to_py(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_loss_kind(name: &str) -> PyResult<LossKind> {
    match name {
        "improvement" => Ok(LossKind::Improvement),
        "strategic" => Ok(LossKind::Strategic),
        "zero-one" | "zero_one" => Ok(LossKind::ZeroOne),
        other => Err(PyValueError::new_err(format!(
            "unknown loss kind {other:?}; expected improvement, strategic, or zero-one"
        ))),
    }
}

fn parse_learner(name: &str) -> PyResult<OnlineAlgorithm> {
    match name {
        "standard" => Ok(OnlineAlgorithm::StandardMajority),
        "alg3" => Ok(OnlineAlgorithm::RiskAverseMajority),
        "alg4" => Ok(OnlineAlgorithm::RiskAverseWeighted),
        other => Err(PyValueError::new_err(format!(
            "unknown learner {other:?}; expected standard, alg3, or alg4"
        ))),
    }
}

/// A finite world: a concept class over `n` points plus an improvement
/// map saying where each rejected point can move.
///
/// Usage from Python:
///
///     from improvepac_py import World
///     w = World([[1, 0], [0, 1]])
///     w.is_minimally_consistent()            # True
///     w.loss("improvement", h=0, fstar=1)    # exact population loss
#[pyclass]
struct World {
    class: ConceptClass,
    delta: ImprovementMap,
}

impl World {
    fn check_index(&self, i: usize) -> PyResult<()> {
        if i < self.class.len() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!(
                "concept index {i} out of range for a class of {}",
                self.class.len()
            )))
        }
    }
}

#[pymethods]
impl World {
    /// Build a world from 0/1 concept rows. `delta` maps a point to the
    /// points it can move to; omitted keys (or the whole map) mean
    /// immovable.
    #[new]
    #[pyo3(signature = (concepts, delta=None))]
    fn new(
        concepts: Vec<Vec<u8>>,
        delta: Option<BTreeMap<usize, Vec<usize>>>,
    ) -> PyResult<Self> {
        let n = concepts
            .first()
            .map(|row| row.len())
            .ok_or_else(|| PyValueError::new_err("concepts must be non-empty"))?;
        let class = ConceptClass::from_bytes(n, &concepts).map_err(to_py)?;
        let delta = match delta {
            Some(map) => {
                let pairs: Vec<(usize, Vec<usize>)> = map.into_iter().collect();
                ImprovementMap::explicit(n, &pairs).map_err(to_py)?
            }
            None => ImprovementMap::immovable(n),
        };
        Ok(World { class, delta })
    }

    /// Load a world file (the same JSON documents the CLI uses). A
    /// missing `delta` field means nobody can move.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let file = WorldFile::load(path).map_err(to_py)?;
        let class = file.class().map_err(to_py)?;
        let delta = if file.delta.is_some() {
            file.improvement_map().map_err(to_py)?
        } else {
            ImprovementMap::immovable(class.n())
        };
        Ok(World { class, delta })
    }

    #[getter]
    fn n(&self) -> usize {
        self.class.n()
    }

    fn __len__(&self) -> usize {
        self.class.len()
    }

    fn __repr__(&self) -> String {
        format!("World(n={}, concepts={})", self.class.n(), self.class.len())
    }

    /// The 0/1 row of one concept.
    fn labels(&self, i: usize) -> PyResult<Vec<u8>> {
        self.check_index(i)?;
        Ok(self.class.get(i).to_bytes())
    }

    fn is_intersection_closed(&self) -> PyResult<bool> {
        Ok(is_intersection_closed(&self.class).map_err(to_py)?.holds)
    }

    fn is_minimally_consistent(&self) -> PyResult<bool> {
        Ok(is_minimally_consistent(&self.class).map_err(to_py)?.holds)
    }

    fn is_nearly_minimally_consistent(&self) -> PyResult<bool> {
        Ok(is_nearly_minimally_consistent(&self.class).map_err(to_py)?.holds)
    }

    fn vc_dimension(&self) -> PyResult<usize> {
        vc_dimension(&self.class).map_err(to_py)
    }

    /// Exact population loss of concept `h` deployed against target
    /// `fstar` under this world's improvement map. `kind` is
    /// "improvement" (graded after moving), "strategic" (truth frozen at
    /// the origin), or "zero-one" (nobody moves). Weights default to
    /// uniform.
    #[pyo3(signature = (kind, h, fstar, weights=None))]
    fn loss(&self, kind: &str, h: usize, fstar: usize, weights: Option<Vec<f64>>) -> PyResult<f64> {
        let kind = parse_loss_kind(kind)?;
        self.check_index(h)?;
        self.check_index(fstar)?;
        let dist = match weights {
            Some(w) => Distribution::new(DistKind::FiniteWeighted { weights: w }, 0),
            None => Distribution::uniform_finite(self.class.n(), 0),
        };
        let h = Concept::Finite(self.class.get(h).clone());
        let f = Concept::Finite(self.class.get(fstar).clone());
        Ok(population_loss(kind, &h, &f, &self.delta, &dist, 0, 0)
            .map_err(to_py)?
            .mean)
    }

    /// Index of the concept the conservative consistent learner picks for
    /// a labeled sample of (point, label) pairs.
    fn fit_consistent(&self, sample: Vec<(usize, bool)>) -> PyResult<usize> {
        Ok(fit_proper(&self.class, &sample).map_err(to_py)?.index)
    }

    /// Indices of all concepts consistent with the sample.
    fn consistent_indices(&self, sample: Vec<(usize, bool)>) -> Vec<usize> {
        self.class.consistent_indices(&sample)
    }
}

/// Run a saved experiment config document; returns
/// `(summary_json, rows_csv)` exactly as the CLI would emit them.
#[pyfunction]
fn run_config(path: &str) -> PyResult<(String, String)> {
    let config = ExperimentConfig::load(path).map_err(to_py)?;
    let report = harness::run(&config).map_err(to_py)?;
    Ok((report.summary_json().to_string(), report.csv()))
}

/// Run an acceptance bundle; returns a list of
/// `(id, name, passed, measured)` tuples. `fixtures` defaults to the
/// `IMPROVEPAC_FIXTURES` environment variable, then `./fixtures`.
#[pyfunction]
#[pyo3(signature = (bundle, fixtures=None))]
fn run_suite(
    bundle: &str,
    fixtures: Option<&str>,
) -> PyResult<Vec<(usize, String, bool, String)>> {
    let bundle = SuiteBundle::parse(bundle).map_err(to_py)?;
    let dir = fixtures
        .map(PathBuf::from)
        .unwrap_or_else(improvepac::schema::fixtures_dir);
    let outcomes = harness::run_suite(bundle, &dir).map_err(to_py)?;
    Ok(outcomes
        .into_iter()
        .map(|o| (o.id, o.name, o.pass, o.measured))
        .collect())
}

/// Play the adaptive hub adversary against a learner
/// (standard | alg3 | alg4); returns
/// `(mistakes, min_tally, every_round_forced)`.
#[pyfunction]
fn star_adversary(learner: &str, leaves: usize, rounds: usize) -> PyResult<(usize, usize, bool)> {
    let algorithm = parse_learner(learner)?;
    let out =
        star_adversary_game(algorithm, leaves, StarVariant::Singleton, rounds).map_err(to_py)?;
    Ok((out.learner_mistakes, out.min_tally(), out.every_round_forced()))
}

#[pymodule]
fn improvepac_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<World>()?;
    m.add_function(wrap_pyfunction!(run_config, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(star_adversary, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
