//! Bracketed scalar root finding: bisection with a deterministic iteration
//! cap, optionally refined by safeguarded Newton steps.

use core::fmt;
#[allow(unused_imports)] // no_std float math; shadowed when tests link std
use num_traits::Float;

pub(crate) const MAX_BISECT_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum SolveError {
    /// `f` has the same sign at both bracket ends.
    NoSignChange { lo: f64, hi: f64 },
    /// Iteration cap hit before the bracket shrank to tolerance.
    IterationLimit { last: f64 },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::NoSignChange { lo, hi } => {
                write!(f, "no sign change over [{lo}, {hi}]")
            }
            SolveError::IterationLimit { last } => {
                write!(f, "bisection iteration cap hit near {last}")
            }
        }
    }
}

/// Bisects `f` over `[lo, hi]` until the bracket width falls below
/// `rel_tol * max(|lo|, |hi|)` (with an absolute floor of `f64::MIN_POSITIVE`).
/// `geometric` switches to geometric midpoints, which is the right metric for
/// positive brackets spanning many orders of magnitude.
pub(crate) fn bisect<F>(
    f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
    geometric: bool,
) -> Result<f64, SolveError>
where
    F: Fn(f64) -> f64,
{
    debug_assert!(lo < hi);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(SolveError::NoSignChange { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..MAX_BISECT_ITER {
        let mid = if geometric {
            (a * b).sqrt()
        } else {
            0.5 * (a + b)
        };
        if !(mid > a && mid < b) {
            // Bracket collapsed to adjacent floats.
            return Ok(0.5 * (a + b));
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            a = mid;
            flo = fmid;
        } else {
            b = mid;
        }
        if b - a <= rel_tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE) {
            return Ok(0.5 * (a + b));
        }
    }
    Err(SolveError::IterationLimit { last: 0.5 * (a + b) })
}

/// A few Newton steps from `x0`, safeguarded to stay inside `[lo, hi]` and to
/// never increase `|f|`. Returns the best iterate.
pub(crate) fn newton_polish<F, D>(f: F, df: D, x0: f64, lo: f64, hi: f64, steps: usize) -> f64
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let mut x = x0;
    let mut fx = f(x);
    for _ in 0..steps {
        if fx == 0.0 {
            break;
        }
        let d = df(x);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let next = x - fx / d;
        if !(next >= lo && next <= hi) || !next.is_finite() {
            break;
        }
        let fnext = f(next);
        if fnext.abs() >= fx.abs() {
            break;
        }
        x = next;
        fx = fnext;
    }
    x
}
