//! Cross-module invariants: properties that tie the loss semantics, the
//! learners, and the runner together, checked over randomized worlds.

use proptest::prelude::*;

use improvepac::ballworld::{covering_experiment, CoveringExperiment};
use improvepac::concept::{Concept, Labeling};
use improvepac::dist::{DistKind, Distribution};
use improvepac::harness::{run, ExperimentConfig, Verb};
use improvepac::improvement::ImprovementMap;
use improvepac::loss::{population_loss, LossKind};
use improvepac::online::random_bounded_graph;
use improvepac::proper::{pac_experiment, random_nearly_minimal_class, PacExperiment};
use improvepac::rng::substream;
use improvepac::schema::WorldFile;

/// A random finite world: two labelings, a normalized weight vector, and an
/// explicit improvement map, all on the same `n` points.
fn arb_world() -> impl Strategy<
    Value = (usize, Labeling, Labeling, Distribution, ImprovementMap),
> {
    (1usize..=6)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(any::<bool>(), n),
                prop::collection::vec(any::<bool>(), n),
                prop::collection::vec(1u32..=8, n),
                prop::collection::vec(prop::collection::vec(any::<bool>(), n), n),
            )
        })
        .prop_map(|(n, h_bits, f_bits, raw_weights, delta_bits)| {
            let bits_to_labeling = |bits: &[bool]| {
                let bytes: Vec<u8> = bits.iter().map(|&b| b as u8).collect();
                Labeling::from_bytes(&bytes).expect("bits are 0/1")
            };
            let total: u32 = raw_weights.iter().sum();
            let weights: Vec<f64> =
                raw_weights.iter().map(|&w| w as f64 / total as f64).collect();
            let dist = Distribution::new(DistKind::FiniteWeighted { weights }, 5);
            let pairs: Vec<(usize, Vec<usize>)> = delta_bits
                .iter()
                .enumerate()
                .map(|(x, row)| {
                    (x, row.iter().enumerate().filter(|(_, &b)| b).map(|(y, _)| y).collect())
                })
                .filter(|(_, targets): &(usize, Vec<usize>)| !targets.is_empty())
                .collect();
            let delta = ImprovementMap::explicit(n, &pairs).expect("indices in range");
            (n, bits_to_labeling(&h_bits), bits_to_labeling(&f_bits), dist, delta)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// When nobody can move, grading at the destination is grading at the
    /// origin: improvement loss and plain classification loss coincide
    /// exactly, whatever the hypothesis, target, and weights.
    #[test]
    fn immovable_worlds_reduce_to_plain_classification(
        (n, h, f, dist, _delta) in arb_world(),
    ) {
        let h = Concept::Finite(h);
        let f = Concept::Finite(f);
        let frozen = ImprovementMap::immovable(n);
        let imp = population_loss(LossKind::Improvement, &h, &f, &frozen, &dist, 0, 0).unwrap();
        let zo = population_loss(LossKind::ZeroOne, &h, &f, &frozen, &dist, 0, 0).unwrap();
        prop_assert!(imp.exact && zo.exact);
        prop_assert_eq!(imp.mean, zo.mean);
    }

    /// Deploying the target itself never loses anything under improvement
    /// semantics, no matter how points can move: everyone who moves lands
    /// on a point the target truly accepts.
    #[test]
    fn the_target_never_pays_under_improvements(
        (_n, _h, f, dist, delta) in arb_world(),
    ) {
        let f = Concept::Finite(f);
        let loss = population_loss(LossKind::Improvement, &f, &f, &delta, &dist, 0, 0).unwrap();
        prop_assert!(loss.exact);
        prop_assert_eq!(loss.mean, 0.0);
    }

    /// World files round-trip: class rows and improvement sets come back
    /// exactly as saved.
    #[test]
    fn world_files_round_trip(
        (n, h, f, _dist, delta) in arb_world(),
    ) {
        let concepts = if h.to_bytes() == f.to_bytes() { vec![h] } else { vec![h, f] };
        let cls = improvepac::concept::ConceptClass::new(n, concepts).unwrap();
        let file = WorldFile::from_class(&cls).with_delta(&delta).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("world.json");
        file.save(&path).unwrap();
        let back = WorldFile::load(&path).unwrap();
        prop_assert_eq!(&back, &file);
        let reclass = back.class().unwrap();
        for i in 0..cls.len() {
            prop_assert_eq!(reclass.get(i).to_bytes(), cls.get(i).to_bytes());
        }
    }

    /// The runner is a pure function of its config: the same document
    /// yields the same rows and the same summary, byte for byte.
    #[test]
    fn runner_output_is_a_function_of_the_config(
        seed in any::<u64>(),
        m in 1usize..=20,
        trials in 1usize..=25,
    ) {
        let config = ExperimentConfig {
            name: "determinism".into(),
            verb: Verb::Covering,
            params: serde_json::json!({
                "cells": [[0.0, 0.3], [0.3, 0.6], [0.6, 1.0]],
                "m": m,
                "beta": 0.3,
            }),
            seed,
            trials,
            out: None,
        };
        let a = run(&config).unwrap();
        let b = run(&config).unwrap();
        prop_assert_eq!(a.csv(), b.csv());
        prop_assert_eq!(a.summary, b.summary);
    }
}

/// More samples never hurt the consistent learner on average: at four
/// times the sample size, the mean loss over 400 trials stays within two
/// pooled standard errors of monotone.
#[test]
fn pac_loss_is_monotone_in_sample_size_within_noise() {
    let mut rng = substream(4242, 0);
    let cls = random_nearly_minimal_class(3..=6, 3..=6, &mut rng).unwrap();
    let n = cls.n();
    let graph = random_bounded_graph(n, 3, &mut rng).unwrap();

    let stats = |m: usize| {
        let exp = PacExperiment {
            cls: cls.clone(),
            delta: ImprovementMap::Neighborhood(graph.clone()),
            dist: Distribution::uniform_finite(n, 4242),
            m,
            trials: 400,
            eps: 0.1,
            fstar: None,
        };
        let out = pac_experiment(&exp, 4242 + m as u64).unwrap();
        let losses: Vec<f64> = out.trials.iter().map(|t| t.loss).collect();
        let mean = losses.iter().sum::<f64>() / losses.len() as f64;
        let var = losses.iter().map(|l| (l - mean) * (l - mean)).sum::<f64>()
            / losses.len() as f64;
        (mean, (var / losses.len() as f64).sqrt())
    };

    for m1 in [4usize, 8] {
        let (mean1, se1) = stats(m1);
        let (mean2, se2) = stats(4 * m1);
        let slack = 2.0 * (se1 * se1 + se2 * se2).sqrt();
        assert!(
            mean2 <= mean1 + slack,
            "mean loss rose from {mean1:.4} (m={m1}) to {mean2:.4} (m={}), slack {slack:.4}",
            4 * m1
        );
    }
}

/// The observed all-cells-hit frequency stays above the union-bound
/// prediction minus three standard errors for every tested combination of
/// cell count, mass floor, and sample size.
#[test]
fn covering_rate_dominates_the_union_bound() {
    let trials = 400usize;
    for &(n_cells, gamma) in &[(4usize, 0.1f64), (10, 0.1), (10, 0.3), (20, 0.2)] {
        let beta = 1.0 / n_cells as f64;
        let m = ((1.0 / beta) * (n_cells as f64 / gamma).ln()).ceil() as usize;
        let cells: Vec<(f64, f64)> = (0..n_cells)
            .map(|k| (k as f64 / n_cells as f64, (k + 1) as f64 / n_cells as f64))
            .collect();
        let exp = CoveringExperiment {
            cells,
            dist: Distribution::new(DistKind::UniformInterval, 77),
            m,
            trials,
            beta,
        };
        let out = covering_experiment(&exp, 77).unwrap();
        let sigma = (out.all_hit_rate * (1.0 - out.all_hit_rate) / trials as f64)
            .sqrt()
            .max(1.0 / trials as f64);
        assert!(
            out.all_hit_rate >= out.union_bound - 3.0 * sigma,
            "N={n_cells} beta={beta} m={m}: rate {} below bound {} - 3*{sigma}",
            out.all_hit_rate,
            out.union_bound
        );
    }
}
