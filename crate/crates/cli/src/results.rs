//! Result rows and their CSV / JSON encodings.
//!
//! Column order is fixed:
//! `instance,algorithm,params,seed,value,opt,ratio,guarantee,oracle_calls,wall_ms`.
//! `seed` is empty for deterministic runs; `opt` and `ratio` are empty when
//! the exact optimum was not computed. Floats print in shortest
//! round-trip form, so identical runs serialize byte-identically.

use std::io::Write;

use anyhow::Result;
use serde::Serialize;

/// One algorithm execution (for randomized algorithms, one trial).
#[derive(Clone, Debug, Serialize)]
pub struct ResultRow {
    /// Instance label: the file path as given, or a synthetic name for
    /// built-in corpora.
    pub instance: String,
    /// Algorithm identifier (`greedy`, `pd`, `crs-rand`, ...).
    pub algorithm: String,
    /// Semicolon-joined `key=value` parameter list, e.g. `beta=1;p=0.25`.
    pub params: String,
    /// RNG seed the run consumed; `None` for deterministic algorithms.
    pub seed: Option<u64>,
    /// Objective value of the returned set.
    pub value: f64,
    /// Exact optimum over independent sets, when computed.
    pub opt: Option<f64>,
    /// `value / opt`; 1.0 when both are zero.
    pub ratio: Option<f64>,
    /// Proved factor g with OPT ≤ g · (expected) value for this
    /// algorithm at these parameters.
    pub guarantee: f64,
    /// Value-oracle queries issued.
    pub oracle_calls: u64,
    /// Wall-clock milliseconds; 0 unless timing was requested, so reruns
    /// stay byte-identical.
    pub wall_ms: u64,
}

/// `value / opt` with the 0/0 = 1 convention (an output of value zero is
/// optimal when the optimum itself is zero).
pub fn ratio(value: f64, opt: f64) -> f64 {
    if opt == 0.0 {
        1.0
    } else {
        value / opt
    }
}

/// Writes rows as CSV with the fixed header. An empty slice still yields
/// the header line.
pub fn write_csv(rows: &[ResultRow], out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record([
            "instance", "algorithm", "params", "seed", "value", "opt", "ratio", "guarantee",
            "oracle_calls", "wall_ms",
        ])?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes rows as a pretty-printed JSON array (same fields; absent values
/// become `null`).
pub fn write_json(rows: &[ResultRow], out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, rows)?;
    out.write_all(b"\n")?;
    Ok(())
}
