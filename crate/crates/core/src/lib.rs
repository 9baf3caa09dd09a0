//! Maximization of non-negative submodular functions over the independent
//! sets of graphs carrying an inductive-independence certificate.
//!
//! A graph is *inductively k-independent* when some vertex ordering keeps the
//! independence number of every vertex's later-ordered neighborhood at most
//! `k`, and *k-perfectly orientable* when some edge orientation does the same
//! for out-neighborhoods. Interval graphs (k = 1), line graphs (k = 2) and
//! k-degenerate graphs are the standard examples. Given such a certificate,
//! one-pass combinatorial algorithms and relaxation rounding give constant
//! (in k) approximation factors for maximizing a submodular function over
//! independent sets, using only O(n) value-oracle queries.
//!
//! Module map:
//!
//! * [`graph`] — graph, ordering, and orientation types plus certificate
//!   verifiers and an exact independence-number solver for small graphs.
//! * [`submodular`] — the value-oracle trait, concrete function families
//!   (modular, coverage, cut), query counting, and the multilinear extension.
//! * [`algorithms`] — preemptive greedy and primal-dual sweeps, with dual
//!   certificates and proved-ratio bookkeeping.
//! * [`relaxation`] — the per-vertex packing polytope, continuous-greedy
//!   solvers, and contention-resolution rounding.
//! * [`bruteforce`] — exhaustive reference optima for acceptance testing.
//! * [`seeds`] — deterministic derivation of independent RNG streams.

pub mod algorithms;
pub mod bruteforce;
pub mod graph;
pub mod relaxation;
pub mod seeds;
pub mod submodular;

mod error;

pub use error::{Error, Result};
pub use graph::{Graph, OrderedGraph, OrientedGraph, VertexSet};
pub use relaxation::FractionalPoint;
pub use submodular::SubmodularOracle;
