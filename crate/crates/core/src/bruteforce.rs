//! Exhaustive reference solvers used as ground truth in the test suites.

use crate::graph::{Graph, VertexSet};
use crate::submodular::SubmodularOracle;
use crate::{Error, Result};

/// Size cap for [`enumerate_independent_sets`].
pub const ENUMERATION_CAP: usize = 24;

/// Size cap for [`brute_force_opt`].
pub const OPT_CAP: usize = 20;

/// Exact optimum of `f` over the independent sets of `g`.
#[derive(Clone, Debug)]
pub struct BruteForceResult {
    pub best_set: VertexSet,
    pub best_value: f64,
    /// Independent sets actually visited. Without pruning this equals the
    /// total number of independent sets (the independence polynomial at 1).
    pub sets_enumerated: u64,
}

/// Visits every independent set of `g` exactly once (the empty set included)
/// in lexicographic order of the sorted member list; returns the count.
pub fn enumerate_independent_sets(
    g: &Graph,
    mut visitor: impl FnMut(&[usize]),
) -> Result<u64> {
    if g.n() > ENUMERATION_CAP {
        return Err(Error::CapExceeded { what: "enumeration graph", size: g.n(), cap: ENUMERATION_CAP });
    }
    let mut banned = vec![0u32; g.n()];
    let mut current = Vec::new();
    let mut count = 0u64;
    enumerate_rec(g, 0, &mut banned, &mut current, &mut visitor, &mut count);
    Ok(count)
}

fn enumerate_rec(
    g: &Graph,
    start: usize,
    banned: &mut [u32],
    current: &mut Vec<usize>,
    visitor: &mut impl FnMut(&[usize]),
    count: &mut u64,
) {
    visitor(current);
    *count += 1;
    for v in start..g.n() {
        if banned[v] > 0 {
            continue;
        }
        for &u in g.neighbors(v) {
            if u > v {
                banned[u] += 1;
            }
        }
        current.push(v);
        enumerate_rec(g, v + 1, banned, current, visitor, count);
        current.pop();
        for &u in g.neighbors(v) {
            if u > v {
                banned[u] -= 1;
            }
        }
    }
}

/// Exact maximum of `f` over independent sets, ties broken toward the
/// lexicographically smallest set.
///
/// When `f.monotone_hint()` is set, subtrees are pruned with the upper bound
/// f(current ∪ candidates); the bound costs one extra oracle query per node
/// but skips hopeless extensions. Pruning is strict (`bound < best`), so tied
/// optima are still enumerated and the lexicographic tie-break is unaffected.
pub fn brute_force_opt(g: &Graph, f: &dyn SubmodularOracle) -> Result<BruteForceResult> {
    if g.n() > OPT_CAP {
        return Err(Error::CapExceeded { what: "brute-force graph", size: g.n(), cap: OPT_CAP });
    }
    if f.ground_size() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), got: f.ground_size() });
    }
    let mut state = OptState {
        g,
        f,
        monotone: f.monotone_hint(),
        banned: vec![0u32; g.n()],
        current: Vec::new(),
        best_set: VertexSet::new(),
        best_value: 0.0, // f(∅) = 0 by the oracle contract; no query needed
        sets_enumerated: 1,
    };
    opt_rec(&mut state, 0);
    Ok(BruteForceResult {
        best_set: state.best_set,
        best_value: state.best_value,
        sets_enumerated: state.sets_enumerated,
    })
}

struct OptState<'a> {
    g: &'a Graph,
    f: &'a dyn SubmodularOracle,
    monotone: bool,
    banned: Vec<u32>,
    current: Vec<usize>,
    best_set: VertexSet,
    best_value: f64,
    sets_enumerated: u64,
}

fn opt_rec(st: &mut OptState, start: usize) {
    let candidates: Vec<usize> = (start..st.g.n()).filter(|&v| st.banned[v] == 0).collect();
    if candidates.is_empty() {
        return;
    }
    if st.monotone {
        let mut reach: VertexSet = st.current.iter().copied().collect();
        for &v in &candidates {
            reach.insert(v);
        }
        // Monotonicity: every extension of `current` within this subtree is
        // a subset of `reach`. Strictly worse bound ⇒ nothing here can win
        // or tie.
        if st.f.value(&reach) < st.best_value {
            return;
        }
    }
    for &v in &candidates {
        for &u in st.g.neighbors(v) {
            if u > v {
                st.banned[u] += 1;
            }
        }
        st.current.push(v);
        let set: VertexSet = st.current.iter().copied().collect();
        let val = st.f.value(&set);
        st.sets_enumerated += 1;
        if val > st.best_value || (val == st.best_value && set < st.best_set) {
            st.best_value = val;
            st.best_set = set;
        }
        opt_rec(st, v + 1);
        st.current.pop();
        for &u in st.g.neighbors(v) {
            if u > v {
                st.banned[u] -= 1;
            }
        }
    }
}
