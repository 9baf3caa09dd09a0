//! `subsetmax` — generate benchmark instances, run the solvers, verify the
//! proved guarantees.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use subsetmax_cli::generate::{
    attach_function, gen_degenerate, gen_interval_graph, gen_line_graph_matching,
    gen_oriented_cycle, FunctionKind,
};
use subsetmax_cli::instance::{read_instance, write_instance, Instance};
use subsetmax_cli::results::{write_csv, write_json, ResultRow};
use subsetmax_cli::runner::{run_batch, thread_pool, Algo, OptMode, RunConfig};
use subsetmax_cli::verify::{builtin_corpus, run_verify, SuiteKind, VerifyConfig};
use subsetmax_core::seeds;

#[derive(Parser)]
#[command(
    name = "subsetmax",
    version,
    about = "Submodular maximization over independent sets of inductively k-independent graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClassKind {
    /// Random intervals on [0, 1]; k = 1.
    Interval,
    /// Line graph of a random base graph; k = 2.
    Line,
    /// Erdős–Rényi graph with its degeneracy ordering.
    Degenerate,
    /// Directed cycle, shipped in oriented form only; k = 1.
    Cycle,
}

impl ClassKind {
    fn name(self) -> &'static str {
        match self {
            ClassKind::Interval => "interval",
            ClassKind::Line => "line",
            ClassKind::Degenerate => "degenerate",
            ClassKind::Cycle => "cycle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FunctionArg {
    Modular,
    Coverage,
    Cut,
}

impl From<FunctionArg> for FunctionKind {
    fn from(a: FunctionArg) -> FunctionKind {
        match a {
            FunctionArg::Modular => FunctionKind::Modular,
            FunctionArg::Coverage => FunctionKind::Coverage,
            FunctionArg::Cut => FunctionKind::Cut,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate seeded benchmark instances as JSON files.
    Gen {
        /// Graph class to draw from.
        #[arg(long, value_enum)]
        class: ClassKind,
        /// Ground-set size (for `line`, the number of base edges).
        #[arg(long)]
        n: usize,
        /// Base-graph vertex count (`line` only; default: smallest count
        /// with at least 2n candidate edges).
        #[arg(long)]
        base_n: Option<usize>,
        /// Edge probability (`degenerate` only).
        #[arg(long, default_value_t = 0.4)]
        edge_prob: f64,
        /// Objective family to attach.
        #[arg(long, value_enum, default_value_t = FunctionArg::Modular)]
        function: FunctionArg,
        /// How many instances to write.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Master seed; instance i uses the derived stream (seed, i).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run selected algorithms over instance files and emit result rows.
    Run {
        /// Instance files (JSON). An empty list yields an empty report.
        instances: Vec<PathBuf>,
        /// Algorithms to run (repeat or comma-separate).
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        algo: Vec<Algo>,
        /// Threshold multiplier β (default: the factor-optimal choice).
        #[arg(long)]
        beta: Option<f64>,
        /// Push probability (pd-nonneg; default: the factor-optimal choice).
        #[arg(long)]
        p: Option<f64>,
        /// Relaxation scale b (crs-det / crs-rand; default: factor-optimal).
        #[arg(long)]
        b: Option<f64>,
        /// Run against this k instead of the instance's declared one.
        #[arg(long)]
        k_override: Option<usize>,
        /// Trials per randomized algorithm (best-of for the pipelines).
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Ascent steps for the pipelines.
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Master seed; per-trial seeds derive from it.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report encoding.
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Whether to brute-force exact optima for the ratio column.
        #[arg(long, value_enum, default_value_t = OptMode::Auto)]
        opt: OptMode,
        /// Record wall-clock times (off by default so reruns are
        /// byte-identical).
        #[arg(long)]
        timing: bool,
    },
    /// Re-check proved guarantees; exits 1 if any check fails.
    Verify {
        /// Instance files (default: a built-in corpus covering every
        /// generator class and objective family).
        instances: Vec<PathBuf>,
        /// Which suite to run.
        #[arg(long, value_enum, default_value_t = SuiteKind::All)]
        suite: SuiteKind,
        /// Trial count for the statistical suites.
        #[arg(long)]
        trials: Option<usize>,
        /// Master seed for the statistical suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report encoding.
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    };
    std::process::exit(code);
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gen { class, n, base_n, edge_prob, function, count, seed, out } => {
            cmd_gen(class, n, base_n, edge_prob, function.into(), count, seed, &out)?;
            Ok(0)
        }
        Command::Run {
            instances,
            algo,
            beta,
            p,
            b,
            k_override,
            trials,
            steps,
            seed,
            out,
            format,
            opt,
            timing,
        } => {
            let cfg = RunConfig {
                algos: algo,
                beta,
                p,
                b,
                k_override,
                trials,
                steps,
                seed,
                opt,
                timing,
            };
            cmd_run(&instances, &cfg, format, out.as_deref())?;
            Ok(0)
        }
        Command::Verify { instances, suite, trials, seed, format, out } => {
            let cfg = VerifyConfig { suite, trials, seed };
            let passed = cmd_verify(&instances, &cfg, format, out.as_deref())?;
            Ok(if passed { 0 } else { 1 })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    class: ClassKind,
    n: usize,
    base_n: Option<usize>,
    edge_prob: f64,
    function: FunctionKind,
    count: usize,
    seed: u64,
    out: &std::path::Path,
) -> Result<()> {
    std::fs::create_dir_all(out)
        .with_context(|| format!("creating output directory {}", out.display()))?;
    for i in 0..count {
        let inst_seed = seeds::derive(seed, &[i as u64]);
        let mut inst = match class {
            ClassKind::Interval => gen_interval_graph(n, inst_seed)?,
            ClassKind::Line => {
                let base = base_n.unwrap_or_else(|| default_base_n(n));
                gen_line_graph_matching(n, base, inst_seed)?
            }
            ClassKind::Degenerate => gen_degenerate(n, edge_prob, inst_seed)?,
            ClassKind::Cycle => gen_oriented_cycle(n, inst_seed)?,
        };
        if function != FunctionKind::Modular {
            inst = attach_function(&inst, function, inst_seed);
        }
        let path = out.join(format!("{}-n{}-{:04}.json", class.name(), n, i));
        write_instance(&path, &inst)?;
        println!("{}", path.display());
    }
    Ok(())
}

/// Smallest base-graph size giving at least 2n candidate edges, so random
/// n-edge subsets stay varied.
fn default_base_n(n: usize) -> usize {
    let mut b = 3;
    while b * (b - 1) / 2 < 2 * n {
        b += 1;
    }
    b
}

fn cmd_run(
    paths: &[PathBuf],
    cfg: &RunConfig,
    format: Format,
    out: Option<&std::path::Path>,
) -> Result<()> {
    let mut instances: Vec<(String, Instance)> = Vec::with_capacity(paths.len());
    for path in paths {
        let label = path.display().to_string();
        instances.push((label, read_instance(path)?));
    }
    let pool = thread_pool()?;
    let batch = pool.install(|| run_batch(&instances, cfg))?;
    for skip in &batch.skips {
        eprintln!("skipping {} on {}: {}", skip.algorithm, skip.instance, skip.reason);
    }
    write_rows(&batch.rows, format, out)
}

fn write_rows(rows: &[ResultRow], format: Format, out: Option<&std::path::Path>) -> Result<()> {
    let mut sink: Box<dyn Write> = match out {
        Some(path) => Box::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };
    match format {
        Format::Csv => write_csv(rows, &mut sink),
        Format::Json => write_json(rows, &mut sink),
    }
}

fn cmd_verify(
    paths: &[PathBuf],
    cfg: &VerifyConfig,
    format: ReportFormat,
    out: Option<&std::path::Path>,
) -> Result<bool> {
    let instances: Vec<(String, Instance)> = if paths.is_empty() {
        builtin_corpus()?
    } else {
        let mut list = Vec::with_capacity(paths.len());
        for path in paths {
            list.push((path.display().to_string(), read_instance(path)?));
        }
        list
    };
    let pool = thread_pool()?;
    let report = pool.install(|| run_verify(&instances, cfg))?;
    let text = match format {
        ReportFormat::Text => report.render_text(),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report)?;
            s.push('\n');
            s
        }
    };
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(report.passed)
}
