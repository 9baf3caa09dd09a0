//! Shared helpers for the property-test binaries: seeded random graphs and
//! objective functions built only through the public API.
#![allow(dead_code)] // each test binary uses its own subset

use rand::Rng;
use subsetmax_core::graph::Graph;
use subsetmax_core::seeds::StreamRng;
use subsetmax_core::submodular::{CoverageFunction, CutFunction, ModularFunction};

pub fn er_graph(n: usize, p: f64, rng: &mut StreamRng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

pub fn random_modular(n: usize, rng: &mut StreamRng) -> ModularFunction {
    ModularFunction::new((0..n).map(|_| 0.05 + rng.random::<f64>()).collect()).unwrap()
}

/// Coverage over a universe of 2n weighted elements; every vertex covers at
/// least one element so singletons have positive value.
pub fn random_coverage(n: usize, rng: &mut StreamRng) -> CoverageFunction {
    let u = (2 * n).max(1);
    let weights: Vec<f64> = (0..u).map(|_| 0.1 + rng.random::<f64>()).collect();
    let covers: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let mut c: Vec<usize> =
                (0..u).filter(|_| rng.random::<f64>() < 3.0 / u as f64).collect();
            if c.is_empty() {
                c.push(rng.random_range(0..u));
            }
            c
        })
        .collect();
    CoverageFunction::new(weights, covers).unwrap()
}

/// Cut function of a random auxiliary graph on the same vertex set; no
/// relation to the independence graph, which is the interesting case.
pub fn random_cut(n: usize, rng: &mut StreamRng) -> CutFunction {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < 0.5 {
                edges.push((u, v, 0.1 + rng.random::<f64>()));
            }
        }
    }
    CutFunction::new(n, edges).unwrap()
}
