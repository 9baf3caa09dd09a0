//! One-pass combinatorial maximization algorithms.
//!
//! All sweeps process vertices in the instance ordering and use only O(n)
//! value-oracle queries (at most `2n + 2` per run, audited by the tests).
//! Two families:
//!
//! * **Preemptive greedy** keeps a single independent set and may evict the
//!   conflicting members when a new vertex beats `(1+β)` times their summed
//!   incremental values ([`preemptive_greedy`],
//!   [`randomized_preemptive_greedy`]).
//! * **Primal-dual** pushes survivors onto a stack in phase 1 while building
//!   a dual certificate, then extracts a maximal independent set in reverse
//!   push order in phase 2 ([`primal_dual_monotone`], [`primal_dual_nonneg`],
//!   [`primal_dual_mwis`]).
//!
//! Threshold strictness is deliberate and differs between families: greedy
//! accepts on `≥`, primal-dual pushes on strict `>`. A zero-marginal vertex
//! is therefore accepted by greedy but rejected by primal-dual.

mod greedy;
mod primal_dual;

pub use greedy::{preemptive_greedy, preemptive_greedy_traced, randomized_preemptive_greedy, GreedyTrace};
pub use primal_dual::{primal_dual_monotone, primal_dual_mwis, primal_dual_nonneg};

use crate::graph::{Graph, OrderedGraph, VertexSet};
use crate::submodular::SubmodularOracle;
use crate::{Error, Result};

/// Ground-set size cap for [`verify_dual_feasibility_monotone`] (2^n subset
/// constraints).
pub const DUAL_FEASIBILITY_CAP: usize = 16;

/// Dual values accumulated during a primal-dual sweep.
///
/// `w` and `y = (1+β)·w` are set for pushed vertices, `z` for skipped ones;
/// each entry is written exactly once. `mu` is the value of the final stack.
/// The certificate bounds the optimum: feasibility of `(y, z, mu)` for the
/// packing dual gives OPT ≤ mu + k·Σy.
#[derive(Clone, Debug)]
pub struct DualCertificate {
    pub w: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    pub mu: f64,
}

/// Outcome of a single algorithm run.
#[derive(Clone, Debug)]
pub struct RunResult {
    /// The returned independent set.
    pub output: VertexSet,
    /// f(output), recomputed by a fresh oracle query at the end of the run.
    pub value: f64,
    /// Phase-1 survivors (the stack for primal-dual; the final set for
    /// greedy). Always a superset of `output`.
    pub stack_final: VertexSet,
    /// Dual certificate, for the primal-dual algorithms.
    pub duals: Option<DualCertificate>,
    /// Total value-oracle queries issued during the run.
    pub oracle_calls: u64,
    /// Seed consumed by randomized variants.
    pub rng_seed: Option<u64>,
}

/// Which algorithm/analysis a parameter set or guarantee refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    PrimalDualMonotone,
    PrimalDualNonneg,
    Greedy,
    RandomizedGreedy,
}

/// Tunable parameters shared by the sweeps.
#[derive(Clone, Copy, Debug)]
pub struct AlgoParams {
    /// Threshold multiplier; the acceptance/push test compares against
    /// (1+β) times the conflicting dual mass.
    pub beta: f64,
    /// Push probability (non-negative primal-dual only).
    pub p: Option<f64>,
    /// Master seed (randomized variants only).
    pub seed: Option<u64>,
}

/// The parameter choices that minimize each regime's proved factor.
///
/// * monotone primal-dual: β = 1/√k;
/// * greedy (and its randomized variant): β = √(1 + 1/k);
/// * non-negative primal-dual: p = 1/(√(2/k) + 2), β = (1−2p)/p.
pub fn default_params(k: usize, regime: Regime) -> AlgoParams {
    let kf = k as f64;
    match regime {
        Regime::PrimalDualMonotone => AlgoParams { beta: 1.0 / kf.sqrt(), p: None, seed: None },
        Regime::Greedy | Regime::RandomizedGreedy => {
            AlgoParams { beta: (1.0 + 1.0 / kf).sqrt(), p: None, seed: None }
        }
        Regime::PrimalDualNonneg => {
            let p = 1.0 / ((2.0 / kf).sqrt() + 2.0);
            AlgoParams { beta: (1.0 - 2.0 * p) / p, p: Some(p), seed: None }
        }
    }
}

/// The proved worst-case factor OPT / f(output) (or OPT / E[f(output)] for
/// randomized regimes) at the given parameters.
///
/// Panics if `params` lacks a field the regime requires (`p` for the
/// non-negative primal-dual); that is a caller bug, not a data error.
pub fn guarantee_factor(k: usize, params: &AlgoParams, regime: Regime) -> f64 {
    let kf = k as f64;
    let beta = params.beta;
    match regime {
        Regime::PrimalDualMonotone => (1.0 + beta) * (1.0 / beta + kf),
        Regime::Greedy => (kf * (1.0 + beta) + 1.0) * (1.0 + 1.0 / beta),
        Regime::RandomizedGreedy => 4.0 * (kf * (1.0 + beta) + 1.0) * (1.0 + 1.0 / beta),
        Regime::PrimalDualNonneg => {
            let p = params.p.expect("non-negative primal-dual requires p");
            kf / p + 1.0 / (1.0 - 2.0 * p)
        }
    }
}

/// Pops `stack` in reverse push order, keeping each vertex whose addition
/// leaves the kept set independent. Shared phase 2 of the primal-dual
/// algorithms.
pub(crate) fn reverse_maximal_independent(g: &Graph, stack: &[usize]) -> VertexSet {
    let mut kept = vec![false; g.n()];
    let mut out = VertexSet::new();
    for &v in stack.iter().rev() {
        if g.neighbors(v).iter().all(|&u| !kept[u]) {
            kept[v] = true;
            out.insert(v);
        }
    }
    out
}

/// Checks a monotone primal-dual certificate against the packing dual:
///
/// * `mu = f(stack_final)` (tolerance 1e−9);
/// * for every subset L: f(L) ≤ mu + Σ_{v∈L} z_v + 1e−9 (2^n constraints);
/// * for every vertex v: z_v ≤ y_v + Σ_{u backward-adjacent to v} y_u + 1e−9;
/// * w, y, z, mu all ≥ −1e−9.
///
/// Exponential in n; capped at [`DUAL_FEASIBILITY_CAP`].
pub fn verify_dual_feasibility_monotone(
    result: &RunResult,
    og: &OrderedGraph,
    f: &dyn SubmodularOracle,
) -> Result<bool> {
    let n = og.n();
    if n > DUAL_FEASIBILITY_CAP {
        return Err(Error::CapExceeded { what: "dual feasibility ground set", size: n, cap: DUAL_FEASIBILITY_CAP });
    }
    let duals = result
        .duals
        .as_ref()
        .ok_or_else(|| Error::InvalidParam("run carries no dual certificate".into()))?;
    if duals.w.len() != n || duals.y.len() != n || duals.z.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: duals.w.len() });
    }
    let tol = 1e-9;

    let nonneg = |xs: &[f64]| xs.iter().all(|&x| x >= -tol);
    if !nonneg(&duals.w) || !nonneg(&duals.y) || !nonneg(&duals.z) || duals.mu < -tol {
        return Ok(false);
    }
    if (duals.mu - f.value(&result.stack_final)).abs() > tol {
        return Ok(false);
    }
    for mask in 0..(1usize << n) {
        let l: VertexSet = (0..n).filter(|v| mask & (1 << v) != 0).collect();
        let zsum: f64 = l.iter().map(|v| duals.z[v]).sum();
        if f.value(&l) > duals.mu + zsum + tol {
            return Ok(false);
        }
    }
    for v in 0..n {
        let back: f64 = og.backward_neighbors(v).iter().map(|u| duals.y[u]).sum();
        if duals.y[v] + back < duals.z[v] - tol {
            return Ok(false);
        }
    }
    Ok(true)
}
