//! Guarantee verification suites behind `subsetmax verify`.
//!
//! Each suite re-checks a class of proved properties on concrete
//! instances — supplied files or a built-in corpus — and reports one line
//! per check. Failures name the instance and the master seed so they can
//! be replayed. Exit policy belongs to the caller: a report either passes
//! or it does not.

use anyhow::{Context, Result};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use subsetmax_core::algorithms::{
    default_params, guarantee_factor, preemptive_greedy, primal_dual_monotone, primal_dual_mwis,
    primal_dual_nonneg, randomized_preemptive_greedy, verify_dual_feasibility_monotone, Regime,
    DUAL_FEASIBILITY_CAP,
};
use subsetmax_core::bruteforce::{brute_force_opt, enumerate_independent_sets, OPT_CAP};
use subsetmax_core::graph::{
    is_independent, verify_inductive_k_independence, verify_k_perfect_orientation,
};
use subsetmax_core::relaxation::{
    crs_deterministic, crs_randomized, membership, PackingPolytope,
};
use subsetmax_core::submodular::{incremental_value, is_submodular_brute, SUBMODULARITY_CAP};
use subsetmax_core::{seeds, FractionalPoint, VertexSet};

use crate::generate::{
    attach_function, gen_degenerate, gen_interval_graph, gen_line_graph_matching,
    gen_oriented_cycle, FunctionKind,
};
use crate::instance::{FunctionSpec, Instance};

/// Selectable verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteKind {
    /// Every suite below.
    All,
    /// Certificates, oracle identities, polytope membership, CRS safety.
    Structural,
    /// Deterministic sweep values against exact optima.
    Ratio,
    /// Primal-dual certificates against the packing dual.
    Dual,
    /// The modular-weight specialization's primal and dual bounds.
    Mwis,
    /// Contention-resolution retention frequencies (with a per-vertex table).
    CrsBalance,
    /// Sample means of the randomized sweeps against their guarantees.
    RandRatio,
}

impl SuiteKind {
    fn runs(self, suite: SuiteKind) -> bool {
        self == SuiteKind::All || self == suite
    }

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::All => "all",
            SuiteKind::Structural => "structural",
            SuiteKind::Ratio => "ratio",
            SuiteKind::Dual => "dual",
            SuiteKind::Mwis => "mwis",
            SuiteKind::CrsBalance => "crs-balance",
            SuiteKind::RandRatio => "rand-ratio",
        }
    }
}

/// Verification request.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub suite: SuiteKind,
    /// Trial count for the statistical suites (`crs-balance` default 20 000,
    /// `rand-ratio` default 1 000).
    pub trials: Option<usize>,
    pub seed: u64,
}

/// One verified property on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: String,
    pub instance: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

/// Per-vertex retention frequencies for one (instance, scheme) pair.
#[derive(Clone, Debug, Serialize)]
pub struct FreqTable {
    pub instance: String,
    pub scheme: String,
    pub trials: usize,
    pub bound: f64,
    pub rows: Vec<FreqRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreqRow {
    pub vertex: usize,
    pub x: f64,
    /// Trials in which the vertex was sampled into R.
    pub sampled: u64,
    /// Conditional survival frequency given sampling.
    pub observed: f64,
}

/// Full verification outcome.
#[derive(Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub tables: Vec<FreqTable>,
    pub passed: bool,
}

impl Report {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("verify suite={} seed={}\n", self.suite, self.seed));
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            out.push_str(&format!("[{mark}] {}/{} {} — {}\n", c.suite, c.check, c.instance, c.detail));
        }
        for t in &self.tables {
            out.push_str(&format!(
                "\nretention table: {} scheme={} trials={} bound={:.6}\n",
                t.instance, t.scheme, t.trials, t.bound
            ));
            out.push_str("vertex      x  sampled  observed\n");
            for r in &t.rows {
                out.push_str(&format!(
                    "{:>6} {:>6.4} {:>8} {:>9.5}\n",
                    r.vertex, r.x, r.sampled, r.observed
                ));
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!(
            "\nsummary: {} checks, {} failed — {}\n",
            self.checks.len(),
            failed,
            if self.passed { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Deterministic corpus used when no instance files are supplied: every
/// generator class crossed with every objective family it supports, all
/// small enough for exact reference optima.
pub fn builtin_corpus() -> Result<Vec<(String, Instance)>> {
    let mut out: Vec<(String, Instance)> = Vec::new();
    let mut push = |label: String, inst: Instance| out.push((label, inst));

    for (i, n) in [6usize, 9, 12].into_iter().enumerate() {
        let g = gen_interval_graph(n, 100 + i as u64)?;
        push(format!("builtin:interval-{n}-modular"), g.clone());
        push(
            format!("builtin:interval-{n}-coverage"),
            attach_function(&g, FunctionKind::Coverage, 150 + i as u64),
        );
    }
    for (i, (m, base)) in [(8usize, 5usize), (11, 6)].into_iter().enumerate() {
        let g = gen_line_graph_matching(m, base, 200 + i as u64)?;
        push(format!("builtin:line-{m}-modular"), g.clone());
        push(
            format!("builtin:line-{m}-coverage"),
            attach_function(&g, FunctionKind::Coverage, 250 + i as u64),
        );
    }
    for (i, (n, p)) in [(8usize, 0.3), (10, 0.5)].into_iter().enumerate() {
        let g = gen_degenerate(n, p, 300 + i as u64)?;
        push(format!("builtin:degenerate-{n}-modular"), g.clone());
        push(
            format!("builtin:degenerate-{n}-coverage"),
            attach_function(&g, FunctionKind::Coverage, 350 + i as u64),
        );
        push(
            format!("builtin:degenerate-{n}-cut"),
            attach_function(&g, FunctionKind::Cut, 375 + i as u64),
        );
    }
    for (i, n) in [5usize, 9].into_iter().enumerate() {
        let g = gen_oriented_cycle(n, 400 + i as u64)?;
        push(format!("builtin:cycle-{n}-modular"), g.clone());
    }
    push(
        "builtin:cycle-9-cut".into(),
        attach_function(&gen_oriented_cycle(9, 401)?, FunctionKind::Cut, 425),
    );
    Ok(out)
}

/// Runs the selected suites over the instances and collects the report.
pub fn run_verify(instances: &[(String, Instance)], cfg: &VerifyConfig) -> Result<Report> {
    let per_instance: Vec<(Vec<Check>, Vec<FreqTable>)> = instances
        .par_iter()
        .map(|(label, inst)| {
            verify_instance(label, inst, cfg).with_context(|| format!("verifying {label}"))
        })
        .collect::<Result<_>>()?;

    let mut checks = Vec::new();
    let mut tables = Vec::new();
    for (c, t) in per_instance {
        checks.extend(c);
        tables.extend(t);
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(Report { suite: cfg.suite.name().into(), seed: cfg.seed, checks, tables, passed })
}

/// Builds one check record.
fn mk(suite: &str, instance: &str, check: &str, passed: bool, detail: String) -> Check {
    Check {
        suite: suite.into(),
        instance: instance.into(),
        check: check.into(),
        passed,
        detail,
    }
}

/// All applicable checks for one instance.
fn verify_instance(
    label: &str,
    inst: &Instance,
    cfg: &VerifyConfig,
) -> Result<(Vec<Check>, Vec<FreqTable>)> {
    let mut checks = Vec::new();
    let mut tables = Vec::new();
    let f = inst.oracle()?;
    let g = inst.graph()?;
    let og = inst.ordering.as_ref().map(|_| inst.ordered()).transpose()?;
    let dg = inst.oriented()?;
    let opt = if inst.n <= OPT_CAP {
        Some(brute_force_opt(&g, f.as_ref())?.best_value)
    } else {
        None
    };
    if cfg.suite.runs(SuiteKind::Structural) {
        if let Some(og) = &og {
            let ok = verify_inductive_k_independence(og)?;
            checks.push(mk("structural", label, "ordering-certificate", ok, format!("k={}", inst.k)));
        }
        if inst.orientation.is_some() {
            let ok = verify_k_perfect_orientation(&dg)?;
            checks.push(mk("structural", label, "orientation-certificate", ok, format!("k={}", inst.k)));
        }

        let empty = f.value(&VertexSet::new());
        checks.push(mk(
            "structural",
            label,
            "empty-set-value",
            empty == 0.0 && empty.is_sign_positive(),
            format!("f(∅)={empty}"),
        ));

        if inst.n <= SUBMODULARITY_CAP.min(8) {
            checks.push(mk(
                "structural",
                label,
                "submodularity",
                is_submodular_brute(f.as_ref())?,
                format!("n={}", inst.n),
            ));
        }

        if inst.n <= 10 {
            if let Some(og) = &og {
                let mut worst = 0.0_f64;
                for mask in 0..(1u32 << inst.n) {
                    let s: VertexSet = (0..inst.n).filter(|v| mask & (1 << v) != 0).collect();
                    let total: f64 = s
                        .iter()
                        .map(|v| incremental_value(f.as_ref(), &s, v, og.positions()))
                        .sum::<subsetmax_core::Result<f64>>()?;
                    worst = worst.max((total - f.value(&s)).abs());
                }
                checks.push(mk(
                    "structural",
                    label,
                    "incremental-decomposition",
                    worst <= 1e-9,
                    format!("max |Σν − f| = {worst:.3e}"),
                ));
            }
        }

        if inst.n <= 12 {
            let q = match &og {
                Some(og) => PackingPolytope::from_ordered(og),
                None => PackingPolytope::from_oriented(&dg),
            };
            let mut all_inside = true;
            enumerate_independent_sets(&g, |s| {
                let set: VertexSet = s.iter().copied().collect();
                let ind = FractionalPoint::indicator(inst.n, &set).expect("members are in range");
                if !membership(&q, &ind, 1.0).expect("b=1 is valid") {
                    all_inside = false;
                }
            })?;
            checks.push(mk(
                "structural",
                label,
                "independent-sets-in-polytope",
                all_inside,
                format!("n={}", inst.n),
            ));
        }

        if inst.n <= 10 && inst.n > 0 {
            let mut rng = seeds::stream(cfg.seed, &[seeds::hash_str("crs-mono"), seeds::hash_str(label)]);
            let mut ok = true;
            for _ in 0..100 {
                let big: VertexSet = (0..inst.n).filter(|_| rng.random::<bool>()).collect();
                let small: VertexSet = big.iter().filter(|_| rng.random::<bool>()).collect();
                let kept_big = crs_deterministic(&dg, &big);
                let kept_small = crs_deterministic(&dg, &small);
                // Survival is monotone under shrinking R: anything kept from
                // the superset and present in the subset must be kept there.
                for v in kept_big.iter() {
                    if small.contains(v) && !kept_small.contains(v) {
                        ok = false;
                    }
                }
            }
            checks.push(mk("structural", label, "crs-shrink-monotone", ok, "100 sampled pairs".into()));
        }
    }

    if cfg.suite.runs(SuiteKind::Ratio) && inst.function.monotone() {
        if let (Some(og), Some(opt)) = (&og, opt) {
            for (regime, name) in [(Regime::Greedy, "greedy"), (Regime::PrimalDualMonotone, "pd")] {
                let params = default_params(inst.k, regime);
                let result = match regime {
                    Regime::Greedy => preemptive_greedy(og, f.as_ref(), params.beta)?,
                    _ => primal_dual_monotone(og, f.as_ref(), params.beta)?,
                };
                let factor = guarantee_factor(inst.k, &params, regime);
                let ok = opt <= factor * result.value + 1e-6;
                checks.push(mk(
                    "ratio",
                    label,
                    &format!("{name}-guarantee"),
                    ok,
                    format!("value={:.6} opt={opt:.6} factor={factor:.4}", result.value),
                ));
                let budget = 2 * inst.n as u64 + 2;
                checks.push(mk(
                    "ratio",
                    label,
                    &format!("{name}-oracle-budget"),
                    result.oracle_calls <= budget,
                    format!("calls={} budget={budget}", result.oracle_calls),
                ));
            }
        }
    }

    if cfg.suite.runs(SuiteKind::Dual) && inst.function.monotone() {
        if let Some(og) = &og {
            if inst.n <= DUAL_FEASIBILITY_CAP {
                let params = default_params(inst.k, Regime::PrimalDualMonotone);
                let result = primal_dual_monotone(og, f.as_ref(), params.beta)?;
                let duals = result.duals.as_ref().expect("sweep always returns duals");
                checks.push(mk(
                    "dual",
                    label,
                    "packing-dual-feasible",
                    verify_dual_feasibility_monotone(&result, og, f.as_ref())?,
                    format!("mu={:.6}", duals.mu),
                ));
                let wsum: f64 = duals.w.iter().sum();
                let ysum: f64 = duals.y.iter().sum();
                let primal_ok = result.value >= wsum - 1e-9;
                let stack_ok = duals.mu <= (1.0 + params.beta) / params.beta * wsum + 1e-9;
                checks.push(mk(
                    "dual",
                    label,
                    "weight-accounting",
                    primal_ok && stack_ok,
                    format!("f(out)={:.6} Σw={wsum:.6} mu={:.6}", result.value, duals.mu),
                ));
                if let Some(opt) = opt {
                    let bound = duals.mu + inst.k as f64 * ysum;
                    checks.push(mk(
                        "dual",
                        label,
                        "dual-optimum-bound",
                        opt <= bound + 1e-6,
                        format!("opt={opt:.6} bound={bound:.6}"),
                    ));
                }
            }
        }
    }

    if cfg.suite.runs(SuiteKind::Mwis) {
        if let (Some(og), FunctionSpec::Modular { weights }) = (&og, &inst.function) {
            let result = primal_dual_mwis(og, weights)?;
            let ysum: f64 = result.duals.as_ref().expect("mwis returns duals").y.iter().sum();
            // Equality cases make both rounded sums differ by up to an ulp.
            let ulp_tol = inst.n as f64 * f64::EPSILON * (result.value.abs() + ysum.abs());
            checks.push(mk(
                "mwis",
                label,
                "output-covers-duals",
                result.value >= ysum - ulp_tol,
                format!("w(out)={:.6} Σy={ysum:.6}", result.value),
            ));
            if let Some(opt) = opt {
                let ok = opt <= inst.k as f64 * ysum + 1e-6
                    && opt <= inst.k as f64 * result.value + 1e-6;
                checks.push(mk(
                    "mwis",
                    label,
                    "k-approximation",
                    ok,
                    format!("opt={opt:.6} k·Σy={:.6}", inst.k as f64 * ysum),
                ));
            }
        }
    }

    if cfg.suite.runs(SuiteKind::CrsBalance) && inst.n > 0 && inst.n <= 30 {
        let trials = cfg.trials.unwrap_or(20_000);
        let b = 0.5;
        let explicit = cfg.suite == SuiteKind::CrsBalance;
        let (mut c, mut t) = crs_balance_checks(label, inst, &dg, b, trials, cfg.seed, explicit)?;
        checks.append(&mut c);
        tables.append(&mut t);
    }

    if cfg.suite.runs(SuiteKind::RandRatio) {
        if let (Some(og), Some(opt)) = (&og, opt) {
            let trials = cfg.trials.unwrap_or(1000);
            for (regime, name) in
                [(Regime::RandomizedGreedy, "rgreedy"), (Regime::PrimalDualNonneg, "pd-nonneg")]
            {
                let params = default_params(inst.k, regime);
                let mut values = Vec::with_capacity(trials);
                for t in 0..trials {
                    let seed = seeds::derive(
                        cfg.seed,
                        &[seeds::hash_str(label), seeds::hash_str(name), t as u64],
                    );
                    let value = match regime {
                        Regime::RandomizedGreedy => {
                            randomized_preemptive_greedy(og, f.as_ref(), params.beta, seed)?.value
                        }
                        _ => {
                            primal_dual_nonneg(
                                og,
                                f.as_ref(),
                                params.beta,
                                params.p.expect("regime has p"),
                                seed,
                            )?
                            .value
                        }
                    };
                    values.push(value);
                }
                let mean = values.iter().sum::<f64>() / trials as f64;
                let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
                    / (trials as f64 - 1.0).max(1.0);
                let slack = 4.0 * (var / trials as f64).sqrt();
                let factor = guarantee_factor(inst.k, &params, regime);
                let ok = mean >= opt / factor - slack - 1e-9;
                checks.push(mk(
                    "rand-ratio",
                    label,
                    &format!("{name}-mean-guarantee"),
                    ok,
                    format!(
                        "mean={mean:.6} opt/factor={:.6} slack={slack:.6} trials={trials}",
                        opt / factor
                    ),
                ));
            }
        }
    }

    Ok((checks, tables))
}

/// Samples a fractional point in the b-scaled polytope and measures
/// contention-resolution retention for both schemes.
fn crs_balance_checks(
    label: &str,
    inst: &Instance,
    dg: &subsetmax_core::OrientedGraph,
    b: f64,
    trials: usize,
    seed: u64,
    with_table: bool,
) -> Result<(Vec<Check>, Vec<FreqTable>)> {
    let n = inst.n;
    let kf = inst.k as f64;
    let scale = b / kf;
    let q = PackingPolytope::from_oriented(dg);
    let g = inst.graph()?;

    // Random point: a healthy box draw, shrunk until every row fits.
    let mut rng = seeds::stream(seed, &[seeds::hash_str("balance-x"), seeds::hash_str(label)]);
    let mut xs: Vec<f64> = (0..n).map(|_| scale * (0.5 + 0.5 * rng.random::<f64>())).collect();
    let mut worst = 1.0_f64;
    for row in q.rows() {
        let total: f64 = row.iter().map(|&v| xs[v]).sum();
        worst = worst.max(total / (scale * kf));
    }
    if worst > 1.0 {
        let shrink = worst * (1.0 + 1e-12);
        for x in &mut xs {
            *x /= shrink;
        }
    }
    let x = FractionalPoint::new(xs)?;
    let inside = membership(&q, &x, scale)?;
    debug_assert!(inside, "shrunk point must lie in the scaled polytope");
    let _ = inside;

    let mut checks = Vec::new();
    let mut tables = Vec::new();
    for scheme in ["det", "rand"] {
        let bound = if scheme == "det" { 1.0 - b } else { (-b).exp() };
        let mut sampled = vec![0u64; n];
        let mut kept = vec![0u64; n];
        let mut all_independent = true;
        let mut sample_rng =
            seeds::stream(seed, &[seeds::hash_str("balance-r"), seeds::hash_str(label), seeds::hash_str(scheme)]);
        for t in 0..trials {
            let r = x.sample(&mut sample_rng);
            let s = if scheme == "det" {
                crs_deterministic(dg, &r)
            } else {
                let coin_seed = seeds::derive(
                    seed,
                    &[seeds::hash_str("balance-coins"), seeds::hash_str(label), t as u64],
                );
                crs_randomized(dg, &x, &r, coin_seed)?
            };
            if !is_independent(&g, &s)? {
                all_independent = false;
            }
            for v in r.iter() {
                sampled[v] += 1;
            }
            for v in s.iter() {
                kept[v] += 1;
            }
        }
        checks.push(Check {
            suite: "crs-balance".into(),
            instance: label.into(),
            check: format!("{scheme}-independence"),
            passed: all_independent,
            detail: format!("{trials} trials"),
        });

        let mut min_margin = f64::INFINITY;
        let mut rows = Vec::new();
        for v in 0..n {
            if sampled[v] == 0 {
                continue;
            }
            let freq = kept[v] as f64 / sampled[v] as f64;
            rows.push(FreqRow { vertex: v, x: x.get(v), sampled: sampled[v], observed: freq });
            if sampled[v] >= 50 {
                let sigma = (freq * (1.0 - freq) / sampled[v] as f64).sqrt();
                min_margin = min_margin.min(freq + 4.0 * sigma - bound);
            }
        }
        checks.push(Check {
            suite: "crs-balance".into(),
            instance: label.into(),
            check: format!("{scheme}-retention"),
            passed: min_margin >= -1e-12,
            detail: format!("bound={bound:.6} min margin={min_margin:.6} seed={seed}"),
        });
        if with_table {
            tables.push(FreqTable {
                instance: label.into(),
                scheme: scheme.into(),
                trials,
                bound,
                rows,
            });
        }
    }
    Ok((checks, tables))
}
