//! Fractional relaxation machinery: the per-vertex packing polytope, exact
//! linear maximization over it, continuous-greedy ascent of the multilinear
//! extension (plain and measured), and the contention resolution schemes
//! that round fractional points back to independent sets.

mod crs;
mod simplex;

pub use crs::{crs_deterministic, crs_randomized};

use rand::Rng;

use crate::algorithms::RunResult;
use crate::graph::{OrderedGraph, OrientedGraph, VertexSet};
use crate::seeds;
use crate::submodular::{multilinear_from_table, value_table, CountingOracle, SubmodularOracle};
use crate::{Error, Result};

/// Ground sets up to this size get exact multilinear evaluation when the
/// caller asks for automatic selection.
pub const AUTO_EXACT_MAX_N: usize = 16;

/// A point with one coordinate per vertex, each in [0, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalPoint {
    x: Vec<f64>,
}

impl FractionalPoint {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if let Some(bad) = x.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidParam(format!(
                "fractional coordinates must lie in [0, 1], got {bad}"
            )));
        }
        Ok(Self { x })
    }

    pub fn zeros(n: usize) -> Self {
        Self { x: vec![0.0; n] }
    }

    /// 0/1 point with ones exactly on `s`.
    pub fn indicator(n: usize, s: &VertexSet) -> Result<Self> {
        let mut x = vec![0.0; n];
        for v in s.iter() {
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            x[v] = 1.0;
        }
        Ok(Self { x })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn get(&self, v: usize) -> f64 {
        self.x[v]
    }

    pub fn values(&self) -> &[f64] {
        &self.x
    }

    /// Vertices with strictly positive coordinates.
    pub fn support(&self) -> VertexSet {
        self.x
            .iter()
            .enumerate()
            .filter(|(_, &xv)| xv > 0.0)
            .map(|(v, _)| v)
            .collect()
    }

    /// Draws a random set including each vertex independently with
    /// probability x_v, one coin per coordinate in index order.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> VertexSet {
        let mut s = VertexSet::new();
        for (v, &xv) in self.x.iter().enumerate() {
            if rng.random::<f64>() < xv {
                s.insert(v);
            }
        }
        s
    }
}

/// One packing constraint per vertex: x_v plus the coordinates of v's
/// forward (or out-) neighborhood total at most k, and every coordinate
/// lies in [0, 1]. Row v always contains v itself.
#[derive(Clone, Debug)]
pub struct PackingPolytope {
    n: usize,
    k: usize,
    rows: Vec<Vec<usize>>,
}

impl PackingPolytope {
    /// Rows from an ordering: row v covers v and its later neighbors.
    pub fn from_ordered(og: &OrderedGraph) -> Self {
        let rows = (0..og.n())
            .map(|v| {
                let mut row = vec![v];
                row.extend(og.forward_neighbors(v).iter());
                row.sort_unstable();
                row
            })
            .collect();
        Self { n: og.n(), k: og.k(), rows }
    }

    /// Rows from an orientation: row v covers v and its out-neighbors.
    pub fn from_oriented(dg: &OrientedGraph) -> Self {
        let rows = (0..dg.n())
            .map(|v| {
                let mut row = vec![v];
                row.extend_from_slice(dg.out_neighbors(v));
                row.sort_unstable();
                row
            })
            .collect();
        Self { n: dg.n(), k: dg.k(), rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Row v as a sorted vertex-index list; always contains v.
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }
}

/// Tests x ∈ b·Q: componentwise 0 ≤ x_v ≤ b and every row total ≤ b·k.
/// Comparisons are exact; callers that build x numerically are expected to
/// clamp first (the ascent solvers here do).
pub fn membership(q: &PackingPolytope, x: &FractionalPoint, b: f64) -> Result<bool> {
    if x.len() != q.n {
        return Err(Error::DimensionMismatch { expected: q.n, got: x.len() });
    }
    if !(0.0..=1.0).contains(&b) {
        return Err(Error::InvalidParam(format!("scale must lie in [0, 1], got {b}")));
    }
    let cap = b * q.k as f64;
    for (v, row) in q.rows.iter().enumerate() {
        if x.get(v) > b {
            return Ok(false);
        }
        let total: f64 = row.iter().map(|&u| x.get(u)).sum();
        if total > cap {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maximizes c·x over b·Q exactly. The underlying solve is certified: the
/// dual vector must be feasible and match the objective to 1e−7 relative,
/// otherwise this returns a numerical error rather than a dubious point.
pub fn linear_maximize(q: &PackingPolytope, c: &[f64], b: f64) -> Result<FractionalPoint> {
    if c.len() != q.n {
        return Err(Error::DimensionMismatch { expected: q.n, got: c.len() });
    }
    if !(0.0..=1.0).contains(&b) {
        return Err(Error::InvalidParam(format!("scale must lie in [0, 1], got {b}")));
    }
    if q.n == 0 || b == 0.0 {
        return Ok(FractionalPoint::zeros(q.n));
    }
    let mut a = Vec::with_capacity(2 * q.n);
    let mut rhs = Vec::with_capacity(2 * q.n);
    for row in &q.rows {
        let mut dense = vec![0.0; q.n];
        for &u in row {
            dense[u] = 1.0;
        }
        a.push(dense);
        rhs.push(b * q.k as f64);
    }
    for v in 0..q.n {
        let mut dense = vec![0.0; q.n];
        dense[v] = 1.0;
        a.push(dense);
        rhs.push(b);
    }
    let sol = simplex::simplex_maximize(&a, &rhs, c)?;
    // The solve is certified to 1e−9; snap residual float fuzz to the box.
    FractionalPoint::new(sol.x.into_iter().map(|v| v.clamp(0.0, b)).collect())
}

/// How the ascent estimates multilinear gradients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    /// Exact expectation from a full 2^n value table (small n only).
    Exact,
    /// Monte-Carlo with the given sample count, coupled across coordinates.
    Sampled { samples: usize, seed: u64 },
    /// Exact when n ≤ [`AUTO_EXACT_MAX_N`], otherwise sampled as given.
    Auto { samples: usize, seed: u64 },
}

enum GradientEval {
    Exact(Vec<f64>),
    Sampled { samples: usize, rng: seeds::StreamRng },
}

impl GradientEval {
    fn resolve(mode: EvalMode, f: &dyn SubmodularOracle) -> Result<Self> {
        let pick_sampled = |samples: usize, seed: u64| {
            if samples == 0 {
                return Err(Error::InvalidParam("sampled evaluation needs at least one sample".into()));
            }
            Ok(GradientEval::Sampled { samples, rng: seeds::stream(seed, &[]) })
        };
        match mode {
            EvalMode::Exact => Ok(GradientEval::Exact(value_table(f)?)),
            EvalMode::Sampled { samples, seed } => pick_sampled(samples, seed),
            EvalMode::Auto { samples, seed } => {
                if f.ground_size() <= AUTO_EXACT_MAX_N {
                    Ok(GradientEval::Exact(value_table(f)?))
                } else {
                    pick_sampled(samples, seed)
                }
            }
        }
    }

    /// Gradient of the multilinear extension at x: per coordinate,
    /// F(x with x_v=1) − F(x with x_v=0).
    fn gradient(&mut self, f: &dyn SubmodularOracle, x: &[f64]) -> Vec<f64> {
        match self {
            GradientEval::Exact(table) => {
                let mut buf = x.to_vec();
                (0..x.len())
                    .map(|v| {
                        let saved = buf[v];
                        buf[v] = 1.0;
                        let hi = multilinear_from_table(table, &buf);
                        buf[v] = 0.0;
                        let lo = multilinear_from_table(table, &buf);
                        buf[v] = saved;
                        hi - lo
                    })
                    .collect()
            }
            GradientEval::Sampled { samples, rng } => {
                let n = x.len();
                let mut grad = vec![0.0; n];
                for _ in 0..*samples {
                    // One shared sample per round, reused for every
                    // coordinate: cheaper and lower-variance than fresh
                    // draws per coordinate.
                    let mut r = VertexSet::new();
                    for (v, &xv) in x.iter().enumerate() {
                        if rng.random::<f64>() < xv {
                            r.insert(v);
                        }
                    }
                    let fr = f.value(&r);
                    for (v, g) in grad.iter_mut().enumerate() {
                        *g += if r.contains(v) {
                            fr - f.value(&r.without(v))
                        } else {
                            f.value(&r.with(v)) - fr
                        };
                    }
                }
                for g in &mut grad {
                    *g /= *samples as f64;
                }
                grad
            }
        }
    }
}

/// Discretized continuous greedy: `steps` rounds of length b/(k·steps),
/// each moving toward the vertex of Q maximizing the current linearized
/// gradient. The output lies in (b/k)·Q.
pub fn continuous_greedy(
    f: &dyn SubmodularOracle,
    q: &PackingPolytope,
    b: f64,
    steps: usize,
    eval: EvalMode,
) -> Result<FractionalPoint> {
    ascend(f, q, b, steps, eval, false)
}

/// Measured variant for objectives that need not be monotone: the LP
/// weights and the step are both damped by (1 − x_v), so coordinates decay
/// toward their residual room instead of overshooting. Output in (b/k)·Q.
pub fn measured_continuous_greedy(
    f: &dyn SubmodularOracle,
    q: &PackingPolytope,
    b: f64,
    steps: usize,
    eval: EvalMode,
) -> Result<FractionalPoint> {
    ascend(f, q, b, steps, eval, true)
}

fn ascend(
    f: &dyn SubmodularOracle,
    q: &PackingPolytope,
    b: f64,
    steps: usize,
    eval: EvalMode,
    measured: bool,
) -> Result<FractionalPoint> {
    let n = q.n();
    if f.ground_size() != n {
        return Err(Error::DimensionMismatch { expected: n, got: f.ground_size() });
    }
    let k = q.k() as f64;
    if !b.is_finite() || b < 0.0 || b > k {
        return Err(Error::InvalidParam(format!("ascent scale must lie in [0, k], got {b}")));
    }
    if steps < 10 {
        return Err(Error::InvalidParam(format!("ascent needs at least 10 steps, got {steps}")));
    }
    if n == 0 || b == 0.0 {
        return Ok(FractionalPoint::zeros(n));
    }
    let mut evaluator = GradientEval::resolve(eval, f)?;
    let delta = b / (k * steps as f64);
    let mut x = vec![0.0; n];
    for _ in 0..steps {
        let mut grad = evaluator.gradient(f, &x);
        if measured {
            for (g, &xv) in grad.iter_mut().zip(&x) {
                *g *= 1.0 - xv;
            }
        }
        let dir = linear_maximize(q, &grad, 1.0)?;
        for (v, xv) in x.iter_mut().enumerate() {
            let damp = if measured { 1.0 - *xv } else { 1.0 };
            *xv += delta * dir.get(v) * damp;
        }
    }
    clamp_into(q, x, b / k)
}

/// Rescales x just enough that membership in scale·Q holds under exact
/// comparisons, absorbing accumulated float drift from the ascent loop.
fn clamp_into(q: &PackingPolytope, mut x: Vec<f64>, scale: f64) -> Result<FractionalPoint> {
    let cap = scale * q.k() as f64;
    let mut worst: f64 = 1.0;
    for (v, row) in q.rows().iter().enumerate() {
        if x[v] > 0.0 && scale > 0.0 {
            worst = worst.max(x[v] / scale);
        }
        let total: f64 = row.iter().map(|&u| x[u]).sum();
        if total > 0.0 && cap > 0.0 {
            worst = worst.max(total / cap);
        }
    }
    if worst > 1.0 {
        let s = worst * (1.0 + 1e-12);
        for xv in &mut x {
            *xv /= s;
        }
    }
    let point = FractionalPoint::new(x)?;
    debug_assert!(membership(q, &point, scale)?);
    Ok(point)
}

/// Which contention resolution scheme the rounding pipeline applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Deterministic,
    Randomized,
}

/// Instance handed to [`round_pipeline`]: an ordering (edges get oriented
/// earlier→later) or an explicit orientation.
#[derive(Clone, Copy)]
pub enum RelaxSource<'a> {
    Ordered(&'a OrderedGraph),
    Oriented(&'a OrientedGraph),
}

/// Knobs for [`round_pipeline`]. `b = None` picks the scale that maximizes
/// the end-to-end guarantee for the instance's k, the oracle's
/// monotonicity hint, and the scheme — see [`default_scale`].
#[derive(Clone, Copy, Debug)]
pub struct PipelineConfig {
    pub b: Option<f64>,
    pub scheme: Scheme,
    pub trials: usize,
    pub seed: u64,
    pub steps: usize,
    pub eval: EvalMode,
}

/// The ascent scale maximizing the end-to-end ratio:
/// k·ln(1+1/k) for monotone objectives under the randomized scheme and
/// k/(k+1) for non-monotone ones; for the deterministic scheme the product
/// of ascent and retention factors has no closed-form maximizer, so it is
/// located numerically on [0, 1].
pub fn default_scale(k: usize, monotone: bool, scheme: Scheme) -> f64 {
    let kf = k as f64;
    match (scheme, monotone) {
        (Scheme::Randomized, true) => kf * (1.0 + 1.0 / kf).ln(),
        (Scheme::Randomized, false) => kf / (kf + 1.0),
        (Scheme::Deterministic, true) => golden_max(|b| (1.0 - (-b / kf).exp()) * (1.0 - b)),
        (Scheme::Deterministic, false) => {
            golden_max(|b| (b / kf) * (-b / kf).exp() * (1.0 - b))
        }
    }
}

/// The proved end-to-end factor OPT / E[f(output)] of the rounding pipeline
/// at scale `b`: the reciprocal of the ascent factor — (1 − e^(−b/k))
/// monotone, (b/k)·e^(−b/k) otherwise — times the per-vertex retention of
/// the scheme, (1 − b) deterministic or e^(−b) randomized.
///
/// At the default scales this reduces to (k+1)·(1+1/k)^k for monotone
/// objectives under the randomized scheme and e·(k+1) for non-monotone
/// ones. Degenerate scales (b = 0, or b = 1 with the deterministic scheme)
/// drive the factor to infinity.
pub fn pipeline_factor(k: usize, monotone: bool, scheme: Scheme, b: f64) -> f64 {
    let kf = k as f64;
    let ascent = if monotone {
        1.0 - (-b / kf).exp()
    } else {
        (b / kf) * (-b / kf).exp()
    };
    let retention = match scheme {
        Scheme::Deterministic => 1.0 - b,
        Scheme::Randomized => (-b).exp(),
    };
    1.0 / (ascent * retention)
}

/// Golden-section maximizer of a unimodal function on [0, 1].
fn golden_max(f: impl Fn(f64) -> f64) -> f64 {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > 1e-10 {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

/// Full relax-and-round pipeline: ascend the multilinear extension into
/// (b/k)·Q (plain ascent for monotone oracles, measured otherwise), then
/// repeatedly sample R ~ x, resolve contention with the chosen scheme, and
/// return the best sampled outcome. Trial t draws its sample from
/// sub-stream (seed, t, 0) and, for the randomized scheme, its thinning
/// coins from (seed, t, 1), so runs are reproducible end to end.
pub fn round_pipeline(
    f: &dyn SubmodularOracle,
    source: RelaxSource<'_>,
    cfg: &PipelineConfig,
) -> Result<RunResult> {
    if cfg.trials == 0 {
        return Err(Error::InvalidParam("pipeline needs at least one trial".into()));
    }
    let counter = CountingOracle::new(f);
    let q;
    let owned;
    let dg: &OrientedGraph = match source {
        RelaxSource::Ordered(og) => {
            q = PackingPolytope::from_ordered(og);
            owned = OrientedGraph::from_ordered(og);
            &owned
        }
        RelaxSource::Oriented(d) => {
            q = PackingPolytope::from_oriented(d);
            d
        }
    };
    let monotone = f.monotone_hint();
    let b = cfg.b.unwrap_or_else(|| default_scale(q.k(), monotone, cfg.scheme));
    let x = if monotone {
        continuous_greedy(&counter, &q, b, cfg.steps, cfg.eval)?
    } else {
        measured_continuous_greedy(&counter, &q, b, cfg.steps, cfg.eval)?
    };

    let mut best: Option<(VertexSet, f64)> = None;
    for t in 0..cfg.trials {
        let mut rng = seeds::stream(cfg.seed, &[t as u64, 0]);
        let r = x.sample(&mut rng);
        let s = match cfg.scheme {
            Scheme::Deterministic => crs_deterministic(dg, &r),
            Scheme::Randomized => {
                crs_randomized(dg, &x, &r, seeds::derive(cfg.seed, &[t as u64, 1]))?
            }
        };
        let value = counter.value(&s);
        if best.as_ref().is_none_or(|(_, bv)| value > *bv) {
            best = Some((s, value));
        }
    }
    let (output, value) = best.expect("trials ≥ 1 guarantees a candidate");
    Ok(RunResult {
        stack_final: output.clone(),
        output,
        value,
        duals: None,
        oracle_calls: counter.calls(),
        rng_seed: Some(cfg.seed),
    })
}
