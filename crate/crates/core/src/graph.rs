//! Undirected graphs, vertex orderings, and edge orientations.
//!
//! Vertices are dense indices `0..n`. An [`OrderedGraph`] pairs a graph with
//! a vertex ordering and a parameter `k`, claiming that each vertex's
//! *forward* neighborhood (neighbors placed later in the ordering) contains
//! no independent set larger than `k`. An [`OrientedGraph`] makes the same
//! claim for out-neighborhoods under an edge orientation. Both claims can be
//! checked exactly with [`verify_inductive_k_independence`] and
//! [`verify_k_perfect_orientation`], which lean on the branch-and-bound
//! solver [`alpha_exact`].

use crate::{Error, Result};

/// Default size cap for [`alpha_exact`]; exponential beyond this is a bug,
/// not a feature.
pub const DEFAULT_ALPHA_CAP: usize = 30;

/// Default per-neighborhood size cap for the certificate verifiers.
pub const DEFAULT_NEIGHBORHOOD_CAP: usize = 25;

/// A sorted, duplicate-free set of vertex indices.
///
/// The `Ord` impl is lexicographic on the sorted member list, which is what
/// deterministic tie-breaking in the exhaustive solvers relies on.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    /// The empty set.
    pub fn new() -> Self {
        VertexSet { members: Vec::new() }
    }

    /// Builds a set from arbitrary indices; sorts and deduplicates.
    pub fn from_vec(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet { members: vec![v] }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Inserts `v`; returns false if it was already present.
    pub fn insert(&mut self, v: usize) -> bool {
        match self.members.binary_search(&v) {
            Ok(_) => false,
            Err(i) => {
                self.members.insert(i, v);
                true
            }
        }
    }

    /// Removes `v`; returns false if it was absent.
    pub fn remove(&mut self, v: usize) -> bool {
        match self.members.binary_search(&v) {
            Ok(i) => {
                self.members.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// The set with `v` added (no-op if present).
    pub fn with(&self, v: usize) -> Self {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    /// The set with `v` removed (no-op if absent).
    pub fn without(&self, v: usize) -> Self {
        let mut s = self.clone();
        s.remove(v);
        s
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::from_vec(iter.into_iter().collect())
    }
}

/// A simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Rejects self-loops, out-of-range
    /// endpoints, and duplicate edges (in either orientation).
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::IndexOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            if u == v {
                return Err(Error::InvalidEdge { u, v, reason: "self-loop" });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                let d = list.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
                return Err(Error::InvalidEdge { u: d, v: d, reason: "duplicate edge" });
            }
        }
        Ok(Graph { n, adj, m: edges.len() })
    }

    /// The graph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Self {
        Graph { n, adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The subgraph induced on `verts` (which must be distinct), relabeled to
    /// `0..verts.len()` in the given slice order.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); verts.len()];
        let mut m = 0;
        for (i, &v) in verts.iter().enumerate() {
            for &u in &self.adj[v] {
                let j = index[u];
                if j != usize::MAX {
                    adj[i].push(j);
                    if i < j {
                        m += 1;
                    }
                }
            }
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Graph { n: verts.len(), adj, m }
    }
}

/// True iff no edge of `g` has both endpoints in `s`.
pub fn is_independent(g: &Graph, s: &VertexSet) -> Result<bool> {
    for v in s.iter() {
        if v >= g.n() {
            return Err(Error::IndexOutOfRange { index: v, n: g.n() });
        }
    }
    for v in s.iter() {
        for &u in g.neighbors(v) {
            if u > v && s.contains(u) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A graph together with a vertex ordering and the claimed inductive
/// independence parameter `k`.
#[derive(Clone, Debug)]
pub struct OrderedGraph {
    graph: Graph,
    /// order[p] = vertex at position p.
    order: Vec<usize>,
    /// pos[v] = position of vertex v.
    pos: Vec<usize>,
    k: usize,
}

impl OrderedGraph {
    /// `order` must be a permutation of `0..n`; `k ≥ 1`.
    pub fn new(graph: Graph, order: Vec<usize>, k: usize) -> Result<Self> {
        let n = graph.n();
        if order.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: order.len() });
        }
        if k == 0 {
            return Err(Error::InvalidParam("ordering parameter k must be ≥ 1".into()));
        }
        let mut pos = vec![usize::MAX; n];
        for (p, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            if pos[v] != usize::MAX {
                return Err(Error::InvalidParam(format!(
                    "ordering is not a permutation: vertex {v} appears twice"
                )));
            }
            pos[v] = p;
        }
        Ok(OrderedGraph { graph, order, pos, k })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Position → vertex map.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Vertex → position map.
    pub fn positions(&self) -> &[usize] {
        &self.pos
    }

    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn vertex_at(&self, p: usize) -> usize {
        self.order[p]
    }

    /// Neighbors of `v` at strictly later order positions.
    pub fn forward_neighbors(&self, v: usize) -> VertexSet {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| self.pos[u] > self.pos[v])
            .collect()
    }

    /// Neighbors of `v` at strictly earlier order positions.
    pub fn backward_neighbors(&self, v: usize) -> VertexSet {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| self.pos[u] < self.pos[v])
            .collect()
    }
}

/// A graph together with an edge orientation and the claimed parameter `k`.
#[derive(Clone, Debug)]
pub struct OrientedGraph {
    graph: Graph,
    /// out[v] = sorted out-neighbors of v.
    out: Vec<Vec<usize>>,
    k: usize,
}

impl OrientedGraph {
    /// `arcs` must orient every edge of `graph` exactly once.
    pub fn new(graph: Graph, arcs: &[(usize, usize)], k: usize) -> Result<Self> {
        let n = graph.n();
        if k == 0 {
            return Err(Error::InvalidParam("orientation parameter k must be ≥ 1".into()));
        }
        if arcs.len() != graph.m() {
            return Err(Error::InvalidParam(format!(
                "orientation has {} arcs but the graph has {} edges",
                arcs.len(),
                graph.m()
            )));
        }
        let mut out = vec![Vec::new(); n];
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in arcs {
            if u >= n {
                return Err(Error::IndexOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            if !graph.has_edge(u, v) {
                return Err(Error::InvalidEdge { u, v, reason: "arc is not a graph edge" });
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::InvalidEdge { u, v, reason: "edge oriented twice" });
            }
            out[u].push(v);
        }
        for list in out.iter_mut() {
            list.sort_unstable();
        }
        Ok(OrientedGraph { graph, out, k })
    }

    /// Orients every edge from the earlier-ordered endpoint to the later one.
    /// Out-neighborhoods then coincide with forward neighborhoods, so the
    /// result certifies the same `k` whenever the ordering does.
    pub fn from_ordered(og: &OrderedGraph) -> Self {
        let n = og.n();
        let mut out = vec![Vec::new(); n];
        for (u, v) in og.graph().edges() {
            if og.position(u) < og.position(v) {
                out[u].push(v);
            } else {
                out[v].push(u);
            }
        }
        for list in out.iter_mut() {
            list.sort_unstable();
        }
        OrientedGraph { graph: og.graph().clone(), out, k: og.k() }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// All arcs as `(tail, head)`, sorted.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.graph.m());
        for u in 0..self.n() {
            for &v in &self.out[u] {
                out.push((u, v));
            }
        }
        out
    }
}

/// Exact maximum independent set size, by branch and bound.
///
/// Branches on a maximum-degree vertex and prunes with a greedy clique-cover
/// upper bound (any clique contributes at most one vertex to an independent
/// set). Refuses graphs larger than [`DEFAULT_ALPHA_CAP`]; use
/// [`alpha_exact_with_cap`] to override.
pub fn alpha_exact(g: &Graph) -> Result<usize> {
    alpha_exact_with_cap(g, DEFAULT_ALPHA_CAP)
}

/// [`alpha_exact`] with an explicit size cap (still limited to 64 vertices
/// by the bitmask representation).
pub fn alpha_exact_with_cap(g: &Graph, cap: usize) -> Result<usize> {
    if g.n() > cap.min(64) {
        return Err(Error::CapExceeded { what: "alpha_exact graph", size: g.n(), cap: cap.min(64) });
    }
    let masks: Vec<u64> = (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u)))
        .collect();
    let alive: u64 = if g.n() == 64 { !0 } else { (1u64 << g.n()) - 1 };
    let mut best = 0;
    alpha_branch(alive, 0, &masks, &mut best);
    Ok(best)
}

fn alpha_branch(alive: u64, current: usize, masks: &[u64], best: &mut usize) {
    if alive == 0 {
        *best = (*best).max(current);
        return;
    }
    if current + clique_cover_bound(alive, masks) <= *best {
        return;
    }
    // Branch on a max-degree vertex: include it (dropping its closed
    // neighborhood) or exclude it.
    let mut pick = usize::MAX;
    let mut pick_deg = usize::MAX;
    let mut rest = alive;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let deg = (masks[v] & alive).count_ones() as usize;
        if pick == usize::MAX || deg > pick_deg {
            pick = v;
            pick_deg = deg;
        }
    }
    alpha_branch(alive & !masks[pick] & !(1u64 << pick), current + 1, masks, best);
    alpha_branch(alive & !(1u64 << pick), current, masks, best);
}

/// Greedily partitions `alive` into cliques; the clique count bounds the
/// independence number of the induced subgraph from above.
fn clique_cover_bound(alive: u64, masks: &[u64]) -> usize {
    let mut cliques: Vec<u64> = Vec::new();
    let mut rest = alive;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let bit = 1u64 << v;
        match cliques.iter_mut().find(|c| **c & !masks[v] == 0) {
            Some(c) => *c |= bit,
            None => cliques.push(bit),
        }
    }
    cliques.len()
}

/// Checks the ordering's claim: every forward neighborhood must have
/// independence number at most `og.k`.
pub fn verify_inductive_k_independence(og: &OrderedGraph) -> Result<bool> {
    verify_inductive_k_independence_with_cap(og, DEFAULT_NEIGHBORHOOD_CAP)
}

/// [`verify_inductive_k_independence`] with an explicit per-neighborhood cap.
pub fn verify_inductive_k_independence_with_cap(og: &OrderedGraph, cap: usize) -> Result<bool> {
    for v in 0..og.n() {
        let fwd = og.forward_neighbors(v);
        if fwd.len() > cap {
            return Err(Error::CapExceeded {
                what: "forward neighborhood",
                size: fwd.len(),
                cap,
            });
        }
        if fwd.len() <= og.k() {
            continue; // α cannot exceed the neighborhood size
        }
        let sub = og.graph().induced(fwd.members());
        if alpha_exact_with_cap(&sub, cap)? > og.k() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks the orientation's claim: every out-neighborhood must have
/// independence number at most `dg.k`.
pub fn verify_k_perfect_orientation(dg: &OrientedGraph) -> Result<bool> {
    verify_k_perfect_orientation_with_cap(dg, DEFAULT_NEIGHBORHOOD_CAP)
}

/// [`verify_k_perfect_orientation`] with an explicit per-neighborhood cap.
pub fn verify_k_perfect_orientation_with_cap(dg: &OrientedGraph, cap: usize) -> Result<bool> {
    for v in 0..dg.n() {
        let out = dg.out_neighbors(v);
        if out.len() > cap {
            return Err(Error::CapExceeded { what: "out-neighborhood", size: out.len(), cap });
        }
        if out.len() <= dg.k() {
            continue;
        }
        let sub = dg.graph().induced(out);
        if alpha_exact_with_cap(&sub, cap)? > dg.k() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Orders vertices by repeated minimum-degree peeling. The returned `k` is
/// the degeneracy (the largest degree seen at removal time), floored at 1 so
/// the ordering parameter stays valid for edgeless graphs.
///
/// A forward neighborhood under this ordering has at most `degeneracy`
/// vertices, so its independence number is bounded by the same quantity and
/// the returned certificate always verifies (possibly conservatively: the
/// graph may admit a smaller valid `k`).
pub fn degeneracy_ordering(g: &Graph) -> OrderedGraph {
    let n = g.n();
    let mut removed = vec![false; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("peeling invariant: some vertex remains");
        degeneracy = degeneracy.max(deg[v]);
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    OrderedGraph::new(g.clone(), order, degeneracy.max(1))
        .expect("peeling order is a permutation and k ≥ 1")
}
