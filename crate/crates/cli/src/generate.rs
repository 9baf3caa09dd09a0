//! Seeded instance generators for the graph classes with known
//! inductive-independence certificates, plus objective attachment.
//!
//! Every generator is a pure function of its arguments: the same call
//! yields a byte-identical serialized instance. Graph structure and
//! objective draw from independent derived streams, so attaching a
//! different function never perturbs the graph.

use anyhow::{bail, Result};
use rand::seq::SliceRandom;
use rand::Rng;
use subsetmax_core::graph::degeneracy_ordering;
use subsetmax_core::{seeds, Graph, VertexSet};

use crate::instance::{FunctionSpec, Instance, Metadata};

/// Objective families [`attach_function`] can draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionKind {
    Modular,
    Coverage,
    Cut,
}

impl FunctionKind {
    pub fn name(self) -> &'static str {
        match self {
            FunctionKind::Modular => "modular",
            FunctionKind::Coverage => "coverage",
            FunctionKind::Cut => "cut",
        }
    }
}

/// After scaling, the largest singleton value lands on this target, safely
/// inside the documented [0.5, 1] window even after rounding.
const SINGLETON_TARGET: f64 = 0.75;

/// `n` random intervals with i.i.d. uniform endpoints in [0, 1]; vertices
/// are adjacent when their intervals overlap. Ordering by increasing right
/// endpoint (ties by left endpoint, then index) certifies k = 1. Carries a
/// modular objective drawn from the same master seed.
pub fn gen_interval_graph(n: usize, seed: u64) -> Result<Instance> {
    let mut rng = seeds::stream(seed, &[seeds::hash_str("interval")]);
    let intervals: Vec<(f64, f64)> = (0..n)
        .map(|_| {
            let a = rng.random::<f64>();
            let b = rng.random::<f64>();
            (a.min(b), a.max(b))
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if intervals[i].0 <= intervals[j].1 && intervals[j].0 <= intervals[i].1 {
                edges.push((i, j));
            }
        }
    }
    let mut ordering: Vec<usize> = (0..n).collect();
    ordering.sort_by(|&i, &j| {
        let a = (intervals[i].1, intervals[i].0, i);
        let b = (intervals[j].1, intervals[j].0, j);
        a.partial_cmp(&b).expect("interval endpoints are finite")
    });
    finish(n, edges, 1, Some(ordering), None, "interval", seed)
}

/// The line graph of a random base graph with `base_n` vertices and
/// `m_edges` distinct edges: instance vertices are the base edges, adjacent
/// when they share a base endpoint. Cliques around each base vertex cover
/// every forward neighborhood twice over, so an arbitrary — here a randomly
/// permuted — ordering certifies k = 2.
pub fn gen_line_graph_matching(m_edges: usize, base_n: usize, seed: u64) -> Result<Instance> {
    let mut pairs = Vec::new();
    for u in 0..base_n {
        for v in u + 1..base_n {
            pairs.push((u, v));
        }
    }
    if m_edges > pairs.len() {
        bail!("{m_edges} base edges requested but only {} pairs exist on {base_n} vertices", pairs.len());
    }
    let mut rng = seeds::stream(seed, &[seeds::hash_str("line")]);
    pairs.shuffle(&mut rng);
    pairs.truncate(m_edges);

    let mut edges = Vec::new();
    for i in 0..m_edges {
        for j in i + 1..m_edges {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            if a == c || a == d || b == c || b == d {
                edges.push((i, j));
            }
        }
    }
    let mut ordering: Vec<usize> = (0..m_edges).collect();
    ordering.shuffle(&mut rng);
    finish(m_edges, edges, 2, Some(ordering), None, "line", seed)
}

/// An Erdős–Rényi graph with edge probability `edge_prob`; the degeneracy
/// ordering supplies both the certificate and the smallest k it witnesses.
pub fn gen_degenerate(n: usize, edge_prob: f64, seed: u64) -> Result<Instance> {
    if !(0.0..=1.0).contains(&edge_prob) {
        bail!("edge probability {edge_prob} is outside [0, 1]");
    }
    let mut rng = seeds::stream(seed, &[seeds::hash_str("degenerate")]);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < edge_prob {
                edges.push((u, v));
            }
        }
    }
    let og = degeneracy_ordering(&Graph::new(n, &edges)?);
    let (k, ordering) = (og.k(), og.order().to_vec());
    finish(n, edges, k, Some(ordering), None, "degenerate", seed)
}

/// The cycle C_n with the cyclic orientation i → i+1 (mod n): every
/// out-neighborhood is a single vertex, so k = 1. Ships in oriented form
/// only — no ordering field — exercising the orientation code paths.
pub fn gen_oriented_cycle(n: usize, seed: u64) -> Result<Instance> {
    if n < 3 {
        bail!("a cycle needs at least 3 vertices, got {n}");
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let orientation = edges.clone();
    finish(n, edges, 1, None, Some(orientation), "cycle", seed)
}

/// Replaces the objective of `inst` with a fresh draw of the given family,
/// leaving the graph untouched:
///
/// * `modular` — i.i.d. uniform weights;
/// * `coverage` — a universe of 2n unit-weight elements, each vertex
///   covering a random subset of expected size 3;
/// * `cut` — an auxiliary Erdős–Rényi(1/2) graph on the same vertices with
///   uniform edge weights.
///
/// Weights are then scaled so the largest singleton value lies in [0.5, 1].
pub fn attach_function(inst: &Instance, kind: FunctionKind, seed: u64) -> Instance {
    let n = inst.n;
    let mut rng = seeds::stream(seed, &[seeds::hash_str("fn"), seeds::hash_str(kind.name())]);
    let function = match kind {
        FunctionKind::Modular => {
            let mut weights: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            let top = weights.iter().cloned().fold(0.0_f64, f64::max);
            if top > 0.0 {
                for w in &mut weights {
                    *w = *w / top * SINGLETON_TARGET;
                }
            }
            FunctionSpec::Modular { weights }
        }
        FunctionKind::Coverage => {
            let universe = 2 * n;
            let p = if n == 0 { 0.0 } else { (3.0 / universe as f64).min(1.0) };
            let covers: Vec<Vec<usize>> = (0..n)
                .map(|_| (0..universe).filter(|_| rng.random::<f64>() < p).collect())
                .collect();
            let top = covers.iter().map(Vec::len).max().unwrap_or(0);
            let weight = if top > 0 { SINGLETON_TARGET / top as f64 } else { 1.0 };
            FunctionSpec::Coverage { universe_weights: vec![weight; universe], covers }
        }
        FunctionKind::Cut => {
            let mut edges: Vec<(usize, usize, f64)> = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random::<bool>() {
                        edges.push((u, v, rng.random::<f64>()));
                    }
                }
            }
            let mut degree = vec![0.0_f64; n];
            for &(u, v, w) in &edges {
                degree[u] += w;
                degree[v] += w;
            }
            let top = degree.iter().cloned().fold(0.0_f64, f64::max);
            if top > 0.0 {
                for e in &mut edges {
                    e.2 = e.2 / top * SINGLETON_TARGET;
                }
            }
            FunctionSpec::Cut { edges }
        }
    };
    Instance { function, ..inst.clone() }
}

/// Assembles and sanity-checks the final instance.
fn finish(
    n: usize,
    edges: Vec<(usize, usize)>,
    k: usize,
    ordering: Option<Vec<usize>>,
    orientation: Option<Vec<(usize, usize)>>,
    generator: &str,
    seed: u64,
) -> Result<Instance> {
    let skeleton = Instance {
        n,
        edges,
        k,
        ordering,
        orientation,
        function: FunctionSpec::Modular { weights: vec![0.0; n] },
        metadata: Metadata { generator: generator.into(), seed, k },
    };
    let inst = attach_function(&skeleton, FunctionKind::Modular, seed);
    inst.validate()?;
    Ok(inst)
}

/// Largest value of f({v}) over the ground set; 0 on the empty instance.
pub fn max_singleton(inst: &Instance) -> Result<f64> {
    let f = inst.oracle()?;
    Ok((0..inst.n)
        .map(|v| f.value(&VertexSet::singleton(v)))
        .fold(0.0_f64, f64::max))
}
