//! Batch execution: runs selected algorithms over instance files and
//! assembles deterministic result rows.
//!
//! Determinism contract: given the same instances, algorithm list, and
//! seed, the emitted rows are byte-identical across runs and across worker
//! counts. Per-trial seeds derive from
//! `hash(master_seed, instance_label, algorithm_id, trial_index)`, rows are
//! ordered by (instance, algorithm, trial), and wall-clock times report 0
//! unless timing was requested.

use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use subsetmax_core::algorithms::{
    default_params, guarantee_factor, preemptive_greedy, primal_dual_monotone, primal_dual_mwis,
    primal_dual_nonneg, randomized_preemptive_greedy, AlgoParams, Regime, RunResult,
};
use subsetmax_core::bruteforce::{brute_force_opt, OPT_CAP};
use subsetmax_core::relaxation::{
    default_scale, pipeline_factor, EvalMode, PipelineConfig, RelaxSource, Scheme,
};
use subsetmax_core::seeds;

use crate::instance::{FunctionSpec, Instance};
use crate::results::{ratio, ResultRow};

/// Algorithms the runner can dispatch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Algo {
    /// Preemptive greedy sweep (deterministic).
    Greedy,
    /// Greedy on a rate-1/2 random subsample.
    Rgreedy,
    /// Primal-dual sweep for monotone objectives (deterministic).
    Pd,
    /// Primal-dual sweep with random pushes, for non-monotone objectives.
    PdNonneg,
    /// Primal-dual specialization to modular weights (deterministic).
    PdMwis,
    /// Relax-and-round with deterministic contention resolution.
    CrsDet,
    /// Relax-and-round with randomized contention resolution.
    CrsRand,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Greedy => "greedy",
            Algo::Rgreedy => "rgreedy",
            Algo::Pd => "pd",
            Algo::PdNonneg => "pd-nonneg",
            Algo::PdMwis => "pd-mwis",
            Algo::CrsDet => "crs-det",
            Algo::CrsRand => "crs-rand",
        }
    }

    /// Whether separate trials of this algorithm can differ. The rounding
    /// pipelines are randomized too, but they fold their trials into a
    /// single best-of row instead.
    fn per_trial_rows(self) -> bool {
        matches!(self, Algo::Rgreedy | Algo::PdNonneg)
    }

    fn needs_ordering(self) -> bool {
        !matches!(self, Algo::CrsDet | Algo::CrsRand)
    }
}

/// Whether to compute exact optima for the ratio column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OptMode {
    /// Brute-force the optimum whenever the ground set is small enough.
    Auto,
    /// Leave the `opt` and `ratio` columns empty.
    Skip,
}

/// One batch request.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub algos: Vec<Algo>,
    pub beta: Option<f64>,
    pub p: Option<f64>,
    pub b: Option<f64>,
    pub k_override: Option<usize>,
    pub trials: usize,
    pub steps: usize,
    pub seed: u64,
    pub opt: OptMode,
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            algos: vec![Algo::Greedy],
            beta: None,
            p: None,
            b: None,
            k_override: None,
            trials: 1,
            steps: 100,
            seed: 0,
            opt: OptMode::Auto,
            timing: false,
        }
    }
}

/// Why an (algorithm, instance) pair produced no rows.
#[derive(Clone, Debug)]
pub struct Skip {
    pub instance: String,
    pub algorithm: String,
    pub reason: String,
}

/// Output of [`run_batch`]: rows in deterministic order plus skip notes.
#[derive(Debug, Default)]
pub struct BatchOutput {
    pub rows: Vec<ResultRow>,
    pub skips: Vec<Skip>,
}

/// Sizes the rayon pool from the `SUBSETMAX_THREADS` environment variable
/// (unset ⇒ rayon's default). Errors on unparseable values rather than
/// silently ignoring them.
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var("SUBSETMAX_THREADS") {
        let threads: usize = raw
            .parse()
            .ok()
            .filter(|&t| t >= 1)
            .with_context(|| format!("SUBSETMAX_THREADS={raw} is not a positive integer"))?;
        builder = builder.num_threads(threads);
    }
    Ok(builder.build()?)
}

/// Runs every requested algorithm on every instance. `labels[i]` names
/// `instances[i]` in rows, skip notes, and seed derivation.
pub fn run_batch(
    instances: &[(String, Instance)],
    cfg: &RunConfig,
) -> Result<BatchOutput> {
    if cfg.trials == 0 {
        bail!("trials must be at least 1");
    }
    if let Some(k) = cfg.k_override {
        if k == 0 {
            bail!("k override must be at least 1");
        }
    }

    // Exact optima, one per instance, shared across algorithms.
    let opts: Vec<Option<f64>> = instances
        .par_iter()
        .map(|(_, inst)| -> Result<Option<f64>> {
            if cfg.opt == OptMode::Skip || inst.n > OPT_CAP {
                return Ok(None);
            }
            let g = inst.graph()?;
            let f = inst.oracle()?;
            Ok(Some(brute_force_opt(&g, f.as_ref())?.best_value))
        })
        .collect::<Result<_>>()?;

    // Flatten (instance, algorithm, trial) jobs; trial count collapses to 1
    // for algorithms that do not emit per-trial rows.
    let mut jobs = Vec::new();
    let mut skips = Vec::new();
    for (ii, (label, inst)) in instances.iter().enumerate() {
        for &algo in &cfg.algos {
            if let Some(reason) = incompatibility(inst, algo) {
                skips.push(Skip {
                    instance: label.clone(),
                    algorithm: algo.name().into(),
                    reason,
                });
                continue;
            }
            let trials = if algo.per_trial_rows() { cfg.trials } else { 1 };
            for t in 0..trials {
                jobs.push((ii, algo, t));
            }
        }
    }

    let rows: Vec<ResultRow> = jobs
        .par_iter()
        .map(|&(ii, algo, trial)| {
            let (label, inst) = &instances[ii];
            run_one(label, inst, algo, trial, cfg, opts[ii])
                .with_context(|| format!("{} on {label}", algo.name()))
        })
        .collect::<Result<_>>()?;

    Ok(BatchOutput { rows, skips })
}

/// Reason the pair cannot run, if any.
fn incompatibility(inst: &Instance, algo: Algo) -> Option<String> {
    if algo.needs_ordering() && inst.ordering.is_none() {
        return Some("requires an ordering, but the instance only carries an orientation".into());
    }
    if algo == Algo::PdMwis && !matches!(inst.function, FunctionSpec::Modular { .. }) {
        return Some(format!(
            "requires a modular objective, but the instance carries a {} one",
            inst.function.kind()
        ));
    }
    None
}

/// Executes a single job and assembles its row.
fn run_one(
    label: &str,
    inst: &Instance,
    algo: Algo,
    trial: usize,
    cfg: &RunConfig,
    opt: Option<f64>,
) -> Result<ResultRow> {
    let k = cfg.k_override.unwrap_or(inst.k);
    let f = inst.oracle()?;
    let monotone = inst.function.monotone();
    let trial_seed = seeds::derive(
        cfg.seed,
        &[seeds::hash_str(label), seeds::hash_str(algo.name()), trial as u64],
    );

    let started = Instant::now();
    let (result, params, guarantee): (RunResult, String, f64) = match algo {
        Algo::Greedy | Algo::Rgreedy | Algo::Pd | Algo::PdNonneg => {
            let regime = match algo {
                Algo::Greedy => Regime::Greedy,
                Algo::Rgreedy => Regime::RandomizedGreedy,
                Algo::Pd => Regime::PrimalDualMonotone,
                _ => Regime::PrimalDualNonneg,
            };
            let defaults = default_params(k, regime);
            let beta = cfg.beta.unwrap_or(defaults.beta);
            let p = cfg.p.or(defaults.p);
            let params = AlgoParams { beta, p, seed: None };
            let guarantee = guarantee_factor(k, &params, regime);
            let og = ordered_with_k(inst, k)?;
            let result = match algo {
                Algo::Greedy => preemptive_greedy(&og, f.as_ref(), beta)?,
                Algo::Rgreedy => {
                    randomized_preemptive_greedy(&og, f.as_ref(), beta, trial_seed)?
                }
                Algo::Pd => primal_dual_monotone(&og, f.as_ref(), beta)?,
                _ => primal_dual_nonneg(
                    &og,
                    f.as_ref(),
                    beta,
                    p.expect("non-negative regime always has p"),
                    trial_seed,
                )?,
            };
            let mut text = format!("beta={beta}");
            if algo == Algo::PdNonneg {
                text.push_str(&format!(";p={}", p.expect("checked above")));
            }
            (result, text, guarantee)
        }
        Algo::PdMwis => {
            let FunctionSpec::Modular { weights } = &inst.function else {
                unreachable!("incompatibility() filters non-modular objectives");
            };
            let og = ordered_with_k(inst, k)?;
            (primal_dual_mwis(&og, weights)?, String::new(), k as f64)
        }
        Algo::CrsDet | Algo::CrsRand => {
            let scheme = match algo {
                Algo::CrsDet => Scheme::Deterministic,
                _ => Scheme::Randomized,
            };
            let b = cfg.b.unwrap_or_else(|| default_scale(k, monotone, scheme));
            let guarantee = pipeline_factor(k, monotone, scheme, b);
            let pipeline = PipelineConfig {
                b: Some(b),
                scheme,
                trials: cfg.trials,
                seed: trial_seed,
                steps: cfg.steps,
                eval: EvalMode::Auto { samples: 200, seed: seeds::derive(trial_seed, &[7]) },
            };
            // The pipeline needs an out-neighborhood certificate; take the
            // explicit orientation when present, else derive one from the
            // ordering.
            let result = if inst.orientation.is_some() {
                let dg = oriented_with_k(inst, k)?;
                subsetmax_core::relaxation::round_pipeline(
                    f.as_ref(),
                    RelaxSource::Oriented(&dg),
                    &pipeline,
                )?
            } else {
                let og = ordered_with_k(inst, k)?;
                subsetmax_core::relaxation::round_pipeline(
                    f.as_ref(),
                    RelaxSource::Ordered(&og),
                    &pipeline,
                )?
            };
            let params = format!("b={b};steps={};trials={}", cfg.steps, cfg.trials);
            (result, params, guarantee)
        }
    };
    let wall_ms = if cfg.timing { started.elapsed().as_millis() as u64 } else { 0 };

    Ok(ResultRow {
        instance: label.to_string(),
        algorithm: algo.name().to_string(),
        params,
        seed: result.rng_seed,
        value: result.value,
        opt,
        ratio: opt.map(|o| ratio(result.value, o)),
        guarantee,
        oracle_calls: result.oracle_calls,
        wall_ms,
    })
}

/// Rebuilds the ordered view at a possibly overridden k.
fn ordered_with_k(inst: &Instance, k: usize) -> Result<subsetmax_core::OrderedGraph> {
    if k == inst.k {
        return inst.ordered();
    }
    let Some(order) = &inst.ordering else {
        bail!("instance has no ordering (orientation only)");
    };
    Ok(subsetmax_core::OrderedGraph::new(inst.graph()?, order.clone(), k)?)
}

/// Rebuilds the oriented view at a possibly overridden k.
fn oriented_with_k(inst: &Instance, k: usize) -> Result<subsetmax_core::OrientedGraph> {
    if k == inst.k {
        return inst.oriented();
    }
    let Some(arcs) = &inst.orientation else {
        return Ok(subsetmax_core::OrientedGraph::from_ordered(&ordered_with_k(inst, k)?));
    };
    Ok(subsetmax_core::OrientedGraph::new(inst.graph()?, arcs, k)?)
}
