//! Value-oracle interface for set functions, concrete function families, and
//! the multilinear extension.
//!
//! Algorithms see a set function only through [`SubmodularOracle::value`];
//! oracle-call complexity is part of this project's contract, so runs wrap
//! their oracle in a [`CountingOracle`] and report the total. Marginals and
//! order-relative incremental values are free helpers on top of the trait.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::Rng;

use crate::graph::VertexSet;
use crate::relaxation::FractionalPoint;
use crate::{Error, Result};

/// Ground-set size cap for exact multilinear evaluation (2^n terms).
pub const MULTILINEAR_EXACT_CAP: usize = 20;

/// Ground-set size cap for the brute-force submodularity check (3^n pairs).
pub const SUBMODULARITY_CAP: usize = 12;

/// A non-negative set function available through value queries.
///
/// Contract: `value(∅) = 0`, `value(s) ≥ 0` for every `s`, and the function
/// is total on subsets of `0..ground_size`. `monotone_hint` is a promise
/// made by the constructor — it selects guarantees and pruning strategies
/// but is never verified at query time.
pub trait SubmodularOracle: Send + Sync {
    fn ground_size(&self) -> usize;
    fn value(&self, s: &VertexSet) -> f64;
    fn monotone_hint(&self) -> bool;
}

/// f(S) = Σ_{v∈S} w_v with non-negative weights. Monotone.
#[derive(Clone, Debug)]
pub struct ModularFunction {
    weights: Vec<f64>,
}

impl ModularFunction {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidParam(format!("modular weight {w} is not a finite non-negative real")));
        }
        Ok(ModularFunction { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl SubmodularOracle for ModularFunction {
    fn ground_size(&self) -> usize {
        self.weights.len()
    }

    fn value(&self, s: &VertexSet) -> f64 {
        // fold, not sum: an empty `f64` sum is −0.0, and a signed zero must
        // never escape a value oracle (f(∅) = +0.0 exactly).
        s.iter().map(|v| self.weights[v]).fold(0.0, |a, w| a + w)
    }

    fn monotone_hint(&self) -> bool {
        true
    }
}

/// Weighted coverage: f(S) = total weight of the universe elements covered
/// by ∪_{v∈S} covers(v). Monotone.
#[derive(Clone, Debug)]
pub struct CoverageFunction {
    universe_weights: Vec<f64>,
    covers: Vec<Vec<usize>>,
    /// Per-vertex cover as bitmask words over the universe.
    masks: Vec<Vec<u64>>,
}

impl CoverageFunction {
    pub fn new(universe_weights: Vec<f64>, covers: Vec<Vec<usize>>) -> Result<Self> {
        let u = universe_weights.len();
        if let Some(w) = universe_weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidParam(format!("universe weight {w} is not a finite non-negative real")));
        }
        let words = u.div_ceil(64);
        let mut masks = Vec::with_capacity(covers.len());
        for cover in &covers {
            let mut mask = vec![0u64; words];
            for &e in cover {
                if e >= u {
                    return Err(Error::IndexOutOfRange { index: e, n: u });
                }
                mask[e / 64] |= 1 << (e % 64);
            }
            masks.push(mask);
        }
        Ok(CoverageFunction { universe_weights, covers, masks })
    }

    pub fn universe_weights(&self) -> &[f64] {
        &self.universe_weights
    }

    pub fn covers(&self) -> &[Vec<usize>] {
        &self.covers
    }
}

impl SubmodularOracle for CoverageFunction {
    fn ground_size(&self) -> usize {
        self.covers.len()
    }

    fn value(&self, s: &VertexSet) -> f64 {
        let words = self.universe_weights.len().div_ceil(64);
        let mut union = vec![0u64; words];
        for v in s.iter() {
            for (acc, w) in union.iter_mut().zip(&self.masks[v]) {
                *acc |= w;
            }
        }
        let mut total = 0.0;
        for (i, mut word) in union.into_iter().enumerate() {
            while word != 0 {
                let b = word.trailing_zeros() as usize;
                total += self.universe_weights[i * 64 + b];
                word &= word - 1;
            }
        }
        total
    }

    fn monotone_hint(&self) -> bool {
        true
    }
}

/// Cut function of a weighted auxiliary graph on the ground set:
/// f(S) = total weight of edges with exactly one endpoint in S.
/// Non-negative, symmetric (f(S) = f(V∖S)), not monotone.
#[derive(Clone, Debug)]
pub struct CutFunction {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl CutFunction {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        for &(u, v, w) in &edges {
            if u >= n {
                return Err(Error::IndexOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            if u == v {
                return Err(Error::InvalidEdge { u, v, reason: "self-loop in cut graph" });
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidParam(format!("cut weight {w} is not a finite non-negative real")));
            }
        }
        Ok(CutFunction { n, edges })
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }
}

impl SubmodularOracle for CutFunction {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn value(&self, s: &VertexSet) -> f64 {
        let mut inside = vec![false; self.n];
        for v in s.iter() {
            inside[v] = true;
        }
        self.edges
            .iter()
            .filter(|(u, v, _)| inside[*u] != inside[*v])
            .map(|(_, _, w)| w)
            .fold(0.0, |a, w| a + w) // +0.0 on empty, unlike sum()
    }

    fn monotone_hint(&self) -> bool {
        false
    }
}

/// Pass-through wrapper that counts value queries.
///
/// The counter is atomic so a wrapped oracle may be shared, but the intended
/// contract is one `CountingOracle` per algorithm run.
pub struct CountingOracle<'a> {
    inner: &'a dyn SubmodularOracle,
    calls: AtomicU64,
}

impl<'a> CountingOracle<'a> {
    pub fn new(inner: &'a dyn SubmodularOracle) -> Self {
        CountingOracle { inner, calls: AtomicU64::new(0) }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }
}

impl SubmodularOracle for CountingOracle<'_> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn value(&self, s: &VertexSet) -> f64 {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.value(s)
    }

    fn monotone_hint(&self) -> bool {
        self.inner.monotone_hint()
    }
}

/// f(s+v) − f(s), via two oracle queries. Errors if `v ∈ s`.
pub fn marginal(f: &dyn SubmodularOracle, s: &VertexSet, v: usize) -> Result<f64> {
    if s.contains(v) {
        return Err(Error::InvalidParam(format!("marginal of {v} requested but it is already in the set")));
    }
    Ok(f.value(&s.with(v)) - f.value(s))
}

/// The incremental value of `v ∈ s`: the marginal of `v` against the members
/// of `s` at strictly earlier positions under `pos` (vertex → position).
///
/// Summing incremental values over `s` in any order telescopes back to
/// `f(s)`, which is what makes them useful as per-member value shares.
pub fn incremental_value(
    f: &dyn SubmodularOracle,
    s: &VertexSet,
    v: usize,
    pos: &[usize],
) -> Result<f64> {
    if !s.contains(v) {
        return Err(Error::InvalidParam(format!("incremental value of {v} requested but it is not in the set")));
    }
    if pos.len() < f.ground_size() {
        return Err(Error::DimensionMismatch { expected: f.ground_size(), got: pos.len() });
    }
    let before: VertexSet = s.iter().filter(|&u| pos[u] < pos[v]).collect();
    Ok(f.value(&before.with(v)) - f.value(&before))
}

/// Exact multilinear extension F(x) = E[f(R)] where R includes each vertex
/// `v` independently with probability `x_v`. Full 2^n enumeration; capped at
/// [`MULTILINEAR_EXACT_CAP`].
pub fn multilinear_exact(f: &dyn SubmodularOracle, x: &FractionalPoint) -> Result<f64> {
    let n = f.ground_size();
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x.len() });
    }
    if n > MULTILINEAR_EXACT_CAP {
        return Err(Error::CapExceeded { what: "multilinear_exact ground set", size: n, cap: MULTILINEAR_EXACT_CAP });
    }
    let table = value_table(f)?;
    Ok(multilinear_from_table(&table, x.values()))
}

/// F(x) from a precomputed value table indexed by subset bitmask.
pub(crate) fn multilinear_from_table(table: &[f64], x: &[f64]) -> f64 {
    let n = x.len();
    let mut total = 0.0;
    for (mask, &fv) in table.iter().enumerate() {
        if fv == 0.0 {
            continue;
        }
        let mut p = 1.0;
        for (v, &xv) in x.iter().enumerate().take(n) {
            p *= if mask & (1 << v) != 0 { xv } else { 1.0 - xv };
            if p == 0.0 {
                break;
            }
        }
        total += p * fv;
    }
    total
}

/// All 2^n values of `f`, indexed by subset bitmask. One oracle query per
/// non-empty subset.
pub(crate) fn value_table(f: &dyn SubmodularOracle) -> Result<Vec<f64>> {
    let n = f.ground_size();
    if n > MULTILINEAR_EXACT_CAP {
        return Err(Error::CapExceeded { what: "value table ground set", size: n, cap: MULTILINEAR_EXACT_CAP });
    }
    let mut table = vec![0.0; 1 << n];
    for (mask, slot) in table.iter_mut().enumerate().skip(1) {
        let s: VertexSet = (0..n).filter(|v| mask & (1 << v) != 0).collect();
        *slot = f.value(&s);
    }
    Ok(table)
}

/// Monte-Carlo estimate of F(x): the mean of `f` over `samples` independent
/// draws from the product distribution. Reproducible given the caller's RNG
/// state; coordinates are sampled in index order.
pub fn multilinear_estimate<R: Rng>(
    f: &dyn SubmodularOracle,
    x: &FractionalPoint,
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    if x.len() != f.ground_size() {
        return Err(Error::DimensionMismatch { expected: f.ground_size(), got: x.len() });
    }
    if samples == 0 {
        return Err(Error::InvalidParam("multilinear_estimate needs at least one sample".into()));
    }
    let mut total = 0.0;
    for _ in 0..samples {
        let r = x.sample(rng);
        total += f.value(&r);
    }
    Ok(total / samples as f64)
}

/// Exhaustively checks the decreasing-marginals property
/// f(A+v) − f(A) ≥ f(B+v) − f(B) for all A ⊆ B and v ∉ B,
/// with absolute tolerance 1e−9. Capped at [`SUBMODULARITY_CAP`].
pub fn is_submodular_brute(f: &dyn SubmodularOracle) -> Result<bool> {
    let n = f.ground_size();
    if n > SUBMODULARITY_CAP {
        return Err(Error::CapExceeded { what: "is_submodular_brute ground set", size: n, cap: SUBMODULARITY_CAP });
    }
    let table = value_table(f)?;
    let tol = 1e-9;
    let full = (1usize << n) - 1;
    for b in 0..=full {
        // Enumerate submasks a ⊆ b.
        let mut a = b;
        loop {
            for v in 0..n {
                let bit = 1usize << v;
                if b & bit == 0
                    && table[a | bit] - table[a] < table[b | bit] - table[b] - tol
                {
                    return Ok(false);
                }
            }
            if a == 0 {
                break;
            }
            a = (a - 1) & b;
        }
    }
    Ok(true)
}
