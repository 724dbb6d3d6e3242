//! Grid scans that run every route on every cell and record how they
//! compare, aimed at the parameter slices without a proven extremum (open
//! regimes) but usable anywhere. A row never asserts new mathematics: open
//! cells report the oracle estimate next to the one-sided closed-form bound,
//! and proven cells double as live validation of the whole pipeline.

use alloc::vec::Vec;

use crate::closed_form::{self, ExtremumOutcome};
use crate::oracle::{self, OracleConfig};
use crate::problem::{
    boundary_candidates, Direction, ExtendedReal, ExtremumProblem, RegimeTag,
};
use crate::stationarity;

/// One scanned cell. Field order is the wire order used by the CSV writer.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ScanRow {
    pub alpha: f64,
    pub n: usize,
    pub lambda: f64,
    pub direction: Direction,
    pub regime: RegimeTag,
    pub is_open: bool,
    /// Proven extremum, when the regime has one.
    pub closed_value: Option<ExtendedReal>,
    /// One-sided bound for open regimes (upper for infima, lower for
    /// suprema).
    pub open_bound: Option<f64>,
    /// Oracle estimate; `None` when the oracle failed on this cell.
    pub estimate: Option<f64>,
    /// `estimate - closed_value` (or `- open_bound`); `None` against an
    /// infinite value or a failed oracle.
    pub gap: Option<f64>,
    /// Whether the two routes agree (proven cells) or the estimate respects
    /// the bound (open cells); `None` when the oracle failed.
    pub crosscheck_pass: Option<bool>,
    pub boundary_suspect: bool,
    pub converged_starts: usize,
    /// Oracle failure flag; the closed-form columns remain valid.
    pub failed: bool,
    /// Box half-width the oracle actually used.
    pub box_radius: f64,
    /// Objective values at the enumerated stationary points, symmetric
    /// point first.
    pub critical_values: Vec<f64>,
    /// Limit values of degenerate boundary configurations.
    pub boundary_values: Vec<ExtendedReal>,
}

/// Scans one parameter cell. With `auto_box` the oracle box is sized to
/// reach boundary limits within about `1e-10` (see
/// [`oracle::adequate_box_radius`]); otherwise `oracle_config.box_radius`
/// is used as given.
pub fn scan_cell(
    problem: &ExtremumProblem,
    direction: Direction,
    oracle_config: &OracleConfig,
    auto_box: bool,
) -> ScanRow {
    let mut config = *oracle_config;
    if auto_box {
        config.box_radius = oracle::adequate_box_radius(problem, direction);
    }
    let regime = closed_form::classify(problem, direction);
    let critical_values = stationarity::critical_points(problem)
        .iter()
        .map(|c| c.value)
        .collect();
    let boundary_values = boundary_candidates(problem);

    let mut row = ScanRow {
        alpha: problem.alpha(),
        n: problem.n(),
        lambda: problem.lambda(),
        direction,
        regime,
        is_open: regime.is_open(),
        closed_value: None,
        open_bound: None,
        estimate: None,
        gap: None,
        crosscheck_pass: None,
        boundary_suspect: false,
        converged_starts: 0,
        failed: false,
        box_radius: config.box_radius,
        critical_values,
        boundary_values,
    };
    match oracle::crosscheck(problem, direction, &config) {
        Ok(report) => {
            match &report.closed {
                ExtremumOutcome::Known(result) => row.closed_value = Some(result.value),
                ExtremumOutcome::Open(open) => row.open_bound = Some(open.bound),
            }
            row.estimate = Some(report.estimate.value);
            row.gap = report.difference;
            row.crosscheck_pass = Some(report.pass);
            row.boundary_suspect = report.estimate.boundary_suspect;
            row.converged_starts = report.estimate.converged_starts;
        }
        Err(_) => {
            match closed_form::extremum(problem, direction) {
                ExtremumOutcome::Known(result) => row.closed_value = Some(result.value),
                ExtremumOutcome::Open(open) => row.open_bound = Some(open.bound),
            }
            row.failed = true;
        }
    }
    row
}

/// Cross-product scan in deterministic row order (`alphas` outer, then
/// `ns`, then `lambdas`). Combinations that do not form a valid problem
/// statement are skipped.
pub fn scan(
    alphas: &[f64],
    ns: &[usize],
    lambdas: &[f64],
    direction: Direction,
    oracle_config: &OracleConfig,
    auto_box: bool,
) -> Vec<ScanRow> {
    let mut rows = Vec::new();
    for &alpha in alphas {
        for &n in ns {
            for &lambda in lambdas {
                let Ok(problem) = ExtremumProblem::new(alpha, n, lambda) else {
                    continue;
                };
                rows.push(scan_cell(&problem, direction, oracle_config, auto_box));
            }
        }
    }
    rows
}

/// Log-spaced default grid over the open slice of one direction, plus a
/// handful of proven cells as live validation rows.
///
/// Open slices: infima are unproven for `alpha > 1` with `n < alpha + 1`
/// (excluding the `alpha = 2, n = 2` pair regime); suprema for
/// `0 < alpha < 1` with `n < 1/alpha + 1` (excluding `alpha = 1/2, n = 2`).
pub fn default_scan(direction: Direction, oracle_config: &OracleConfig) -> Vec<ScanRow> {
    let lambdas = crate::num::logspace(1e-3, 1e3, 33);
    let mut rows = Vec::new();
    let slices: &[(f64, &[usize])] = match direction {
        Direction::Inf => &[
            (1.25, &[2]),
            (1.5, &[2]),
            (2.5, &[2, 3]),
            (3.0, &[2, 3]),
            (4.0, &[2, 3, 4]),
        ],
        Direction::Sup => &[
            (0.15, &[2, 3, 4, 5, 6, 7]),
            (0.25, &[2, 3, 4]),
            (0.4, &[2, 3]),
            (0.45, &[2, 3]),
        ],
    };
    for &(alpha, ns) in slices {
        rows.extend(scan(&[alpha], ns, &lambdas, direction, oracle_config, true));
    }
    // proven cells: every tag of this direction appears at least once
    let validation: &[(f64, usize, f64)] = match direction {
        Direction::Inf => &[
            (0.5, 3, 15.0),
            (0.5, 3, 3.0),
            (2.0, 4, 0.5),
            (2.0, 2, 0.25),
            (2.0, 2, 1.0),
            (-1.0, 2, 1.0),
            (0.0, 3, 2.0),
        ],
        Direction::Sup => &[
            (1.5, 3, 1.0),
            (1.5, 3, 10.0),
            (0.5, 4, 0.4),
            (0.5, 2, 1.0),
            (0.5, 2, 3.0),
            (-2.0, 3, 1.0),
            (0.0, 3, 2.0),
        ],
    };
    for &(alpha, n, lambda) in validation {
        if let Ok(problem) = ExtremumProblem::new(alpha, n, lambda) {
            rows.push(scan_cell(&problem, direction, oracle_config, true));
        }
    }
    rows
}

/// Per `(direction, alpha, n)` aggregate of a scan, in first-appearance
/// order.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ScanSummary {
    pub direction: Direction,
    pub alpha: f64,
    pub n: usize,
    pub cells: usize,
    pub open_cells: usize,
    pub failed_cells: usize,
    /// Cells where the routes disagreed (`crosscheck_pass == false`).
    pub agreement_failures: usize,
    pub boundary_suspects: usize,
    pub max_abs_gap: Option<f64>,
}

pub fn summarize(rows: &[ScanRow]) -> Vec<ScanSummary> {
    let mut out: Vec<ScanSummary> = Vec::new();
    for row in rows {
        let key = (row.direction, row.alpha, row.n);
        let entry = match out
            .iter_mut()
            .find(|s| (s.direction, s.alpha, s.n) == key)
        {
            Some(entry) => entry,
            None => {
                out.push(ScanSummary {
                    direction: row.direction,
                    alpha: row.alpha,
                    n: row.n,
                    cells: 0,
                    open_cells: 0,
                    failed_cells: 0,
                    agreement_failures: 0,
                    boundary_suspects: 0,
                    max_abs_gap: None,
                });
                out.last_mut().unwrap()
            }
        };
        entry.cells += 1;
        entry.open_cells += row.is_open as usize;
        entry.failed_cells += row.failed as usize;
        entry.agreement_failures += (row.crosscheck_pass == Some(false)) as usize;
        entry.boundary_suspects += row.boundary_suspect as usize;
        if let Some(gap) = row.gap {
            let gap = gap.abs();
            entry.max_abs_gap = Some(entry.max_abs_gap.map_or(gap, |m: f64| m.max(gap)));
        }
    }
    out
}
