//! Preemptive greedy: a single forward sweep that keeps one independent set
//! and may evict the current conflicts of a newly arrived vertex.
//!
//! At vertex v with current set S and conflicts C = N(v) ∩ S, the sweep
//! accepts v iff
//!
//! ```text
//! f_S(v) ≥ (1+β) · Σ_{u∈C} ν(f, S, u)
//! ```
//!
//! where ν(f, S, u) is u's incremental value: its marginal against the
//! members of S that precede u in the instance ordering. On acceptance,
//! S ← (S ∖ C) + v.
//!
//! Incremental values are kept exact while staying inside the O(n)
//! oracle-call budget: S is stored as a chain of prefix values
//! f({s₁}), f({s₁,s₂}), …, so ν of the member at slot t is
//! prefix[t] − prefix[t−1]. An eviction invalidates the chain from the first
//! removed slot onward; only the full-set value is refreshed immediately
//! (one query) and interior slots are rebuilt lazily when a later conflict
//! set actually reads them. Vertices never re-enter after eviction, so lazy
//! rebuilds touch most slots once.

use rand::Rng;

use crate::algorithms::RunResult;
use crate::graph::{OrderedGraph, VertexSet};
use crate::seeds;
use crate::submodular::{CountingOracle, SubmodularOracle};
use crate::{Error, Result};

/// Acceptance log of a greedy run: each accepted vertex together with the
/// conflict set it evicted. Evicted sets are disjoint and their union is
/// exactly (accepted ∖ final output) — each eviction happens once.
#[derive(Clone, Debug, Default)]
pub struct GreedyTrace {
    pub accepted: Vec<(usize, Vec<usize>)>,
}

/// Runs preemptive greedy over the instance ordering. See the module docs
/// for the rule. The guarantees assume `og` verifies at its `k` and `f` is
/// monotone; the sweep itself runs for any oracle.
pub fn preemptive_greedy(
    og: &OrderedGraph,
    f: &dyn SubmodularOracle,
    beta: f64,
) -> Result<RunResult> {
    Ok(preemptive_greedy_traced(og, f, beta)?.0)
}

/// [`preemptive_greedy`] plus its acceptance/eviction log.
pub fn preemptive_greedy_traced(
    og: &OrderedGraph,
    f: &dyn SubmodularOracle,
    beta: f64,
) -> Result<(RunResult, GreedyTrace)> {
    sweep(og, f, beta, None, None)
}

/// Subsamples the ground set at rate 1/2 (one coin per vertex, drawn in
/// vertex index order from the seeded stream) and runs preemptive greedy on
/// the induced ordered subgraph. Subgraphs inherit the ordering and its `k`.
pub fn randomized_preemptive_greedy(
    og: &OrderedGraph,
    f: &dyn SubmodularOracle,
    beta: f64,
    seed: u64,
) -> Result<RunResult> {
    let mut rng = seeds::stream(seed, &[]);
    let active: Vec<bool> = (0..og.n()).map(|_| rng.random::<bool>()).collect();
    Ok(sweep(og, f, beta, Some(&active), Some(seed))?.0)
}

/// Shared sweep. `active` masks the ground set (inactive vertices are never
/// examined, matching a run on the induced subgraph); `seed` is recorded in
/// the result only.
fn sweep(
    og: &OrderedGraph,
    f: &dyn SubmodularOracle,
    beta: f64,
    active: Option<&[bool]>,
    seed: Option<u64>,
) -> Result<(RunResult, GreedyTrace)> {
    if beta <= 0.0 || !beta.is_finite() {
        return Err(Error::InvalidParam(format!("beta must be a positive real, got {beta}")));
    }
    if f.ground_size() != og.n() {
        return Err(Error::DimensionMismatch { expected: og.n(), got: f.ground_size() });
    }
    let counter = CountingOracle::new(f);
    let g = og.graph();

    // S in order-position order, with its prefix-value chain.
    let mut members: Vec<usize> = Vec::new();
    let mut prefix: Vec<f64> = Vec::new(); // prefix[t] = f({members[0..=t]})
    let mut nu: Vec<f64> = Vec::new(); //      nu[t] = prefix[t] − prefix[t−1]
    let mut valid: isize = -1; // chain entries ≤ valid are current
    let mut cached = 0.0; // f(S) for the full current S, always current
    let mut in_set = vec![false; og.n()];
    let mut trace = GreedyTrace::default();

    // Rebuilds chain entries (valid, target] by querying each prefix set;
    // the final slot never needs a query because `cached` already holds it.
    let rebuild = |members: &[usize],
                   prefix: &mut Vec<f64>,
                   nu: &mut Vec<f64>,
                   valid: &mut isize,
                   cached: f64,
                   counter: &CountingOracle,
                   target: usize| {
        for t in ((*valid + 1) as usize)..=target {
            let value = if t + 1 == members.len() {
                cached
            } else {
                let set: VertexSet = members[..=t].iter().copied().collect();
                counter.value(&set)
            };
            prefix[t] = value;
            nu[t] = value - if t == 0 { 0.0 } else { prefix[t - 1] };
        }
        *valid = target as isize;
    };

    for &v in og.order() {
        if let Some(mask) = active {
            if !mask[v] {
                continue;
            }
        }
        let conflict_slots: Vec<usize> = members
            .iter()
            .enumerate()
            .filter(|(_, &u)| g.has_edge(v, u))
            .map(|(t, _)| t)
            .collect();
        if let Some(&last) = conflict_slots.last() {
            if (last as isize) > valid {
                rebuild(&members, &mut prefix, &mut nu, &mut valid, cached, &counter, last);
            }
        }
        let conflict_nu: f64 = conflict_slots.iter().map(|&t| nu[t]).sum();

        let with_v: VertexSet = members.iter().copied().chain(std::iter::once(v)).collect();
        let f_with_v = counter.value(&with_v);
        let marginal_v = f_with_v - cached;

        if marginal_v < (1.0 + beta) * conflict_nu {
            continue;
        }
        trace
            .accepted
            .push((v, conflict_slots.iter().map(|&t| members[t]).collect()));
        if conflict_slots.is_empty() {
            members.push(v);
            prefix.push(f_with_v);
            nu.push(marginal_v);
            if valid == members.len() as isize - 2 {
                valid = members.len() as isize - 1;
            }
            cached = f_with_v;
        } else {
            let first = conflict_slots[0];
            for &t in &conflict_slots {
                in_set[members[t]] = false;
            }
            let mut keep = 0usize;
            members.retain(|_| {
                let t = keep;
                keep += 1;
                conflict_slots.binary_search(&t).is_err()
            });
            members.push(v);
            prefix.resize(members.len(), 0.0);
            nu.resize(members.len(), 0.0);
            valid = valid.min(first as isize - 1);
            let set: VertexSet = members.iter().copied().collect();
            cached = counter.value(&set);
        }
        in_set[v] = true;
    }

    let output: VertexSet = members.iter().copied().collect();
    let value = counter.value(&output);
    let result = RunResult {
        stack_final: output.clone(),
        output,
        value,
        duals: None,
        oracle_calls: counter.calls(),
        rng_seed: seed,
    };
    Ok((result, trace))
}
