//! Stack-based primal–dual algorithms: a forward sweep builds a stack of
//! candidate vertices and a dual assignment, then a reverse sweep pops the
//! stack and keeps each vertex that is independent of those already kept.
//!
//! The monotone variant pushes v iff its marginal against the current stack
//! strictly beats (1+β) times the total stack weight of its neighbors; the
//! nonnegative variant additionally flips a coin and pushes only with
//! probability p. The weight-function variant ([`primal_dual_mwis`]) needs
//! no oracle at all: it charges each vertex against the dual mass of its
//! backward neighbors.

use rand::Rng;

use crate::algorithms::{reverse_maximal_independent, DualCertificate, RunResult};
use crate::graph::{OrderedGraph, VertexSet};
use crate::seeds;
use crate::submodular::{CountingOracle, SubmodularOracle};
use crate::{Error, Result};

/// Primal–dual sweep for monotone objectives.
///
/// Push rule at vertex v with stack set S: let W = Σ w(u) over stacked
/// neighbors u of v; push iff f_S(v) > (1+β)·W, setting w(v) = f_S(v) − W
/// and y(v) = (1+β)·w(v). Otherwise z(v) = f_S(v). The recorded μ is f(Ŝ)
/// for the final stack Ŝ. Output is the reverse-maximal subset of the stack.
pub fn primal_dual_monotone(
    og: &OrderedGraph,
    f: &dyn SubmodularOracle,
    beta: f64,
) -> Result<RunResult> {
    sweep(og, f, beta, None)
}

/// Coin-flipping primal–dual sweep for general nonnegative objectives.
///
/// Same threshold as the monotone variant, but a vertex that passes is
/// pushed only with probability p; z(v) = f_S(v) is set when either the
/// threshold or the coin fails. Coins are drawn once per vertex in vertex
/// index order from the seeded stream, so traces are reproducible.
pub fn primal_dual_nonneg(
    og: &OrderedGraph,
    f: &dyn SubmodularOracle,
    beta: f64,
    p: f64,
    seed: u64,
) -> Result<RunResult> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParam(format!("p must lie in (0, 1), got {p}")));
    }
    sweep(og, f, beta, Some((p, seed)))
}

fn sweep(
    og: &OrderedGraph,
    f: &dyn SubmodularOracle,
    beta: f64,
    coin: Option<(f64, u64)>,
) -> Result<RunResult> {
    if beta <= 0.0 || !beta.is_finite() {
        return Err(Error::InvalidParam(format!("beta must be a positive real, got {beta}")));
    }
    if f.ground_size() != og.n() {
        return Err(Error::DimensionMismatch { expected: og.n(), got: f.ground_size() });
    }
    let counter = CountingOracle::new(f);
    let n = og.n();
    let coins: Option<Vec<f64>> = coin.map(|(_, seed)| {
        let mut rng = seeds::stream(seed, &[]);
        (0..n).map(|_| rng.random::<f64>()).collect()
    });

    let mut w = vec![0.0; n];
    let mut y = vec![0.0; n];
    let mut z = vec![0.0; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut on_stack = vec![false; n];
    let mut stack_set = VertexSet::new();
    let mut cached = 0.0; // f(stack_set), exact oracle output

    for &v in og.order() {
        let neighbor_weight: f64 = og
            .graph()
            .neighbors(v)
            .iter()
            .filter(|&&u| on_stack[u])
            .map(|&u| w[u])
            .sum();
        let with_v = stack_set.with(v);
        let f_with_v = counter.value(&with_v);
        let marginal = f_with_v - cached;

        let passes = marginal > (1.0 + beta) * neighbor_weight;
        let pushed = passes
            && match (&coins, &coin) {
                (Some(c), Some((p, _))) => c[v] < *p,
                _ => true,
            };
        if pushed {
            w[v] = marginal - neighbor_weight;
            y[v] = (1.0 + beta) * w[v];
            stack.push(v);
            on_stack[v] = true;
            stack_set = with_v;
            cached = f_with_v;
        } else {
            z[v] = marginal;
        }
    }

    let output = reverse_maximal_independent(og.graph(), &stack);
    let value = counter.value(&output);
    Ok(RunResult {
        output,
        value,
        stack_final: stack_set,
        duals: Some(DualCertificate { w, y, z, mu: cached }),
        oracle_calls: counter.calls(),
        rng_seed: coin.map(|(_, s)| s),
    })
}

/// Maximum-weight independent set via the same stack discipline, no oracle.
///
/// Forward sweep in the instance ordering: y(v) = max(0, weight(v) − Σ y(u)
/// over backward neighbors u of v); v is pushed iff y(v) > 0. Reverse sweep
/// keeps a maximal independent subset. The returned certificate satisfies
/// w(output) ≥ Σy and, when the ordering verifies at k, OPT ≤ k·Σy.
pub fn primal_dual_mwis(og: &OrderedGraph, weights: &[f64]) -> Result<RunResult> {
    let n = og.n();
    if weights.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: weights.len() });
    }
    if let Some(bad) = weights.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(Error::InvalidParam(format!(
            "weights must be finite and nonnegative, got {bad}"
        )));
    }
    let mut y = vec![0.0; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut stack_set = VertexSet::new();
    for &v in og.order() {
        let charged: f64 = og.backward_neighbors(v).iter().map(|u| y[u]).sum();
        let slack = weights[v] - charged;
        if slack > 0.0 {
            y[v] = slack;
            stack.push(v);
            stack_set.insert(v);
        }
    }
    let output = reverse_maximal_independent(og.graph(), &stack);
    // fold keeps the empty total at +0.0 (an empty f64 sum is −0.0).
    let value: f64 = output.iter().map(|v| weights[v]).fold(0.0, |a, w| a + w);
    Ok(RunResult {
        output,
        value,
        stack_final: stack_set,
        duals: Some(DualCertificate { w: vec![0.0; n], y, z: vec![0.0; n], mu: 0.0 }),
        oracle_calls: 0,
        rng_seed: None,
    })
}
