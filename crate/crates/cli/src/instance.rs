//! On-disk instance format and its validated in-memory form.
//!
//! An instance file is a single JSON object:
//!
//! ```json
//! {
//!   "n": 4,
//!   "edges": [[0, 1], [1, 2]],
//!   "k": 1,
//!   "ordering": [0, 1, 2, 3],
//!   "function": { "type": "modular", "weights": [0.5, 0.75, 0.25, 1.0] },
//!   "metadata": { "generator": "interval", "seed": 7, "k": 1 }
//! }
//! ```
//!
//! Vertices are `0..n`. At most one of `ordering` / `orientation` may be
//! omitted. Loading checks structure (permutations, arc coverage, index
//! ranges) but treats `k` as a claim; whether the certificate really
//! bounds neighborhood independence numbers is checked by the `verify`
//! command, since that test is expensive. The `function` object is tagged
//! by `type` ∈ {`modular`, `coverage`, `cut`}.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use subsetmax_core::submodular::{CoverageFunction, CutFunction, ModularFunction};
use subsetmax_core::{Graph, OrderedGraph, OrientedGraph, SubmodularOracle};

/// Objective attached to an instance, in serialized form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    /// f(S) = Σ_{v∈S} weights[v].
    Modular { weights: Vec<f64> },
    /// f(S) = total weight of universe elements covered by ∪_{v∈S} covers[v].
    Coverage {
        universe_weights: Vec<f64>,
        covers: Vec<Vec<usize>>,
    },
    /// f(S) = total weight of auxiliary edges crossing the cut (S, V∖S).
    Cut { edges: Vec<(usize, usize, f64)> },
}

impl FunctionSpec {
    /// Short tag used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            FunctionSpec::Modular { .. } => "modular",
            FunctionSpec::Coverage { .. } => "coverage",
            FunctionSpec::Cut { .. } => "cut",
        }
    }

    /// Whether the objective is monotone non-decreasing.
    pub fn monotone(&self) -> bool {
        !matches!(self, FunctionSpec::Cut { .. })
    }

    /// Builds the value oracle for a ground set of size `n`, validating the
    /// parameters against it.
    pub fn build(&self, n: usize) -> Result<Box<dyn SubmodularOracle>> {
        match self {
            FunctionSpec::Modular { weights } => {
                if weights.len() != n {
                    bail!("function: {} modular weights for ground set of size {n}", weights.len());
                }
                Ok(Box::new(ModularFunction::new(weights.clone())?))
            }
            FunctionSpec::Coverage { universe_weights, covers } => {
                if covers.len() != n {
                    bail!("function: {} cover sets for ground set of size {n}", covers.len());
                }
                Ok(Box::new(CoverageFunction::new(universe_weights.clone(), covers.clone())?))
            }
            FunctionSpec::Cut { edges } => Ok(Box::new(CutFunction::new(n, edges.clone())?)),
        }
    }
}

/// Provenance block carried by every instance file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    /// Generator name (`interval`, `line`, `degenerate`, `cycle`, or free-form).
    pub generator: String,
    /// Master seed the generator consumed.
    pub seed: u64,
    /// Copy of the top-level independence parameter; must agree with it.
    pub k: usize,
}

/// A benchmark instance: graph, independence certificate, and objective.
///
/// The struct mirrors the JSON layout one-to-one so that serialization is
/// byte-stable; [`Instance::validate`] checks the cross-field invariants
/// and the graph accessors build the core types on demand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<(usize, usize)>>,
    pub function: FunctionSpec,
    pub metadata: Metadata,
}

impl Instance {
    /// Checks every cross-field invariant: the edge list forms a simple
    /// graph on `0..n`, at least one certificate is present and is
    /// structurally sound (a permutation / a one-per-edge arc set), the
    /// objective fits the ground set, and the metadata repeats `k`
    /// faithfully. Whether `k` is truthful is *not* checked here.
    pub fn validate(&self) -> Result<()> {
        self.graph().context("invalid edge list")?;
        if self.ordering.is_none() && self.orientation.is_none() {
            bail!("instance needs an ordering, an orientation, or both");
        }
        if self.k == 0 {
            bail!("k must be at least 1");
        }
        if self.metadata.k != self.k {
            bail!("metadata.k = {} disagrees with k = {}", self.metadata.k, self.k);
        }
        if self.ordering.is_some() {
            self.ordered().context("invalid ordering")?;
        }
        if self.orientation.is_some() {
            self.oriented().context("invalid orientation")?;
        }
        self.function.build(self.n).context("invalid function")?;
        Ok(())
    }

    /// The undirected graph, rebuilt from the edge list.
    pub fn graph(&self) -> Result<Graph> {
        Ok(Graph::new(self.n, &self.edges)?)
    }

    /// The graph with its inductive-independence ordering. Errors when the
    /// file carries only an orientation.
    pub fn ordered(&self) -> Result<OrderedGraph> {
        let Some(order) = &self.ordering else {
            bail!("instance has no ordering (orientation only)");
        };
        Ok(OrderedGraph::new(self.graph()?, order.clone(), self.k)?)
    }

    /// The graph with an out-neighborhood certificate: the explicit
    /// orientation when present, otherwise the one induced by the ordering
    /// (edges point earlier → later).
    pub fn oriented(&self) -> Result<OrientedGraph> {
        if let Some(arcs) = &self.orientation {
            return Ok(OrientedGraph::new(self.graph()?, arcs, self.k)?);
        }
        Ok(OrientedGraph::from_ordered(&self.ordered()?))
    }

    /// Builds the value oracle for this instance's objective.
    pub fn oracle(&self) -> Result<Box<dyn SubmodularOracle>> {
        self.function.build(self.n)
    }
}

/// Parses and validates an instance file. Parse errors keep serde's
/// line/column diagnostics; both kinds of failure name the offending path.
pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let inst: Instance = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    inst.validate().with_context(|| format!("validating {}", path.display()))?;
    Ok(inst)
}

/// Serializes an instance (pretty JSON plus a trailing newline, so output
/// is byte-stable) after re-validating it.
pub fn write_instance(path: impl AsRef<Path>, inst: &Instance) -> Result<()> {
    let path = path.as_ref();
    inst.validate().with_context(|| format!("writing {}", path.display()))?;
    let mut text = serde_json::to_string_pretty(inst)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
