//! Contention resolution: pruning a sampled vertex set down to an
//! independent set using only the edge orientation.

use rand::Rng;

use crate::graph::{OrientedGraph, VertexSet};
use crate::relaxation::FractionalPoint;
use crate::seeds;
use crate::{Error, Result};

/// Keeps exactly the sampled vertices with no sampled out-neighbor:
/// S = {v ∈ R : N⁺(v) ∩ R = ∅}.
///
/// The output is independent unconditionally: every edge carries an
/// orientation, so if both endpoints survived, the tail would have a kept
/// out-neighbor — a contradiction. The rule is oblivious (it never reads
/// fractional values) and monotone in R: shrinking R can only empty
/// out-neighborhoods, so a vertex kept from a superset is also kept from
/// any subset still containing it.
pub fn crs_deterministic(dg: &OrientedGraph, r: &VertexSet) -> VertexSet {
    let mut in_r = vec![false; dg.n()];
    for v in r.iter() {
        in_r[v] = true;
    }
    r.iter()
        .filter(|&v| dg.out_neighbors(v).iter().all(|&u| !in_r[u]))
        .collect()
}

/// Thins R by keeping each v independently with probability
/// (1 − e^{−x_v}) / x_v (its limit 1 as x_v → 0⁺), then applies
/// [`crs_deterministic`] to the survivors. Coins are drawn in vertex index
/// order from the seeded stream.
///
/// Requires R ⊆ support(x); a sampled vertex with x_v = 0 is an error.
pub fn crs_randomized(
    dg: &OrientedGraph,
    x: &FractionalPoint,
    r: &VertexSet,
    seed: u64,
) -> Result<VertexSet> {
    if x.len() != dg.n() {
        return Err(Error::DimensionMismatch { expected: dg.n(), got: x.len() });
    }
    if let Some(v) = r.iter().find(|&v| v >= dg.n()) {
        return Err(Error::IndexOutOfRange { index: v, n: dg.n() });
    }
    if let Some(v) = r.iter().find(|&v| x.get(v) == 0.0) {
        return Err(Error::InvalidParam(format!(
            "vertex {v} was sampled but has zero fractional value"
        )));
    }
    let mut rng = seeds::stream(seed, &[]);
    let mut kept = VertexSet::new();
    for v in r.iter() {
        let coin = rng.random::<f64>();
        if coin < thinning_probability(x.get(v)) {
            kept.insert(v);
        }
    }
    Ok(crs_deterministic(dg, &kept))
}

/// (1 − e^{−x}) / x, extended continuously to 1 at x = 0.
pub(crate) fn thinning_probability(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        -f64::exp_m1(-x) / x
    }
}
