//! Dense-tableau simplex for the packing LPs behind continuous greedy.
//!
//! Desk scale by design: the constraint matrices here are 0/1 with at most
//! a few hundred rows, so a dense exact solver with Bland's anti-cycling
//! rule is simpler and easier to trust than an approximate method. Every
//! solve is certified before it is returned: the dual vector read off the
//! final tableau must be feasible and close the duality gap, otherwise the
//! call fails loudly instead of handing back a dubious point.

use crate::{Error, Result};

/// Entries smaller than this are treated as zero in pivot selection.
const PIVOT_EPS: f64 = 1e-12;
/// Absolute slack allowed when certifying primal/dual feasibility.
const FEAS_TOL: f64 = 1e-9;
/// Relative duality-gap tolerance for accepting a solve.
const GAP_REL_TOL: f64 = 1e-7;
/// Hard iteration cap; Bland's rule terminates long before this at our
/// problem sizes, so hitting it indicates numerical trouble.
const MAX_PIVOTS: usize = 100_000;

// Objective and duals are read by tests and kept for future callers.
#[allow(dead_code)]
pub(crate) struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub duals: Vec<f64>,
}

/// Maximizes c·x subject to a·x ≤ rhs, x ≥ 0. Requires rhs ≥ 0 so the
/// slack basis is feasible. Returns a certified optimum or an error —
/// never an uncertified answer.
pub(crate) fn simplex_maximize(a: &[Vec<f64>], rhs: &[f64], c: &[f64]) -> Result<LpSolution> {
    let m = a.len();
    let n = c.len();
    debug_assert_eq!(rhs.len(), m);
    debug_assert!(a.iter().all(|row| row.len() == n));
    if let Some(bad) = rhs.iter().find(|r| !r.is_finite() || **r < 0.0) {
        return Err(Error::Numerical(format!("simplex needs nonnegative rhs, got {bad}")));
    }
    if n == 0 {
        return Ok(LpSolution { x: Vec::new(), objective: 0.0, duals: vec![0.0; m] });
    }

    let ncols = n + m + 1;
    let mut t = vec![vec![0.0; ncols]; m + 1];
    for i in 0..m {
        t[i][..n].copy_from_slice(&a[i]);
        t[i][n + i] = 1.0;
        t[i][ncols - 1] = rhs[i];
    }
    for j in 0..n {
        t[m][j] = -c[j];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    for pivots in 0.. {
        if pivots > MAX_PIVOTS {
            return Err(Error::Numerical("simplex exceeded its pivot budget".into()));
        }
        // Bland's rule: enter the lowest-index column with negative
        // reduced cost; among tied minimum ratios, leave by lowest basis
        // index. Guarantees termination on degenerate tableaus.
        let Some(enter) = (0..n + m).find(|&j| t[m][j] < -PIVOT_EPS) else {
            break;
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            let aij = t[i][enter];
            if aij > PIVOT_EPS {
                let ratio = t[i][ncols - 1] / aij;
                let take = match leave {
                    None => true,
                    Some(l) => ratio < best || (ratio == best && basis[i] < basis[l]),
                };
                if take {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            return Err(Error::Numerical("simplex found the LP unbounded".into()));
        };

        let piv = t[leave][enter];
        for e in t[leave].iter_mut() {
            *e /= piv;
        }
        let pivot_row = t[leave].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r == leave {
                continue;
            }
            let factor = row[enter];
            if factor != 0.0 {
                for (e, p) in row.iter_mut().zip(&pivot_row) {
                    *e -= factor * p;
                }
            }
        }
        basis[leave] = enter;
    }

    let mut x = vec![0.0; n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = t[i][ncols - 1];
        }
    }
    let duals: Vec<f64> = (0..m).map(|i| t[m][n + i]).collect();
    certify(a, rhs, c, &mut x, &duals)?;
    let objective = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    Ok(LpSolution { x, objective, duals })
}

/// Independently checks the claimed optimum: primal feasibility, dual
/// feasibility, and a closed duality gap. Snaps sub-tolerance negative
/// coordinates to zero as a side effect.
fn certify(a: &[Vec<f64>], rhs: &[f64], c: &[f64], x: &mut [f64], y: &[f64]) -> Result<()> {
    for xi in x.iter_mut() {
        if *xi < 0.0 {
            if *xi < -FEAS_TOL {
                return Err(Error::Numerical(format!("simplex produced negative coordinate {xi}")));
            }
            *xi = 0.0;
        }
    }
    for (row, &b) in a.iter().zip(rhs) {
        let total: f64 = row.iter().zip(x.iter()).map(|(aij, xj)| aij * xj).sum();
        if total > b + FEAS_TOL * b.abs().max(1.0) {
            return Err(Error::Numerical(format!("primal row violated: {total} > {b}")));
        }
    }
    for (i, &yi) in y.iter().enumerate() {
        if yi < -FEAS_TOL {
            return Err(Error::Numerical(format!("negative dual {yi} in row {i}")));
        }
    }
    for (j, &cj) in c.iter().enumerate() {
        let reduced: f64 = a.iter().zip(y).map(|(row, yi)| row[j] * yi).sum();
        if reduced < cj - FEAS_TOL * cj.abs().max(1.0) {
            return Err(Error::Numerical(format!(
                "dual constraint {j} violated: {reduced} < {cj}"
            )));
        }
    }
    let primal: f64 = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    let dual: f64 = y.iter().zip(rhs).map(|(yi, bi)| yi * bi).sum();
    if (primal - dual).abs() > GAP_REL_TOL * primal.abs().max(1.0) {
        return Err(Error::Numerical(format!("duality gap not closed: {primal} vs {dual}")));
    }
    Ok(())
}
