//! Lagrange critical points of the constrained objective.
//!
//! At an interior stationary point every coordinate satisfies
//! `alpha * x_i / (1+x_i)^(alpha+1) = -mu * lambda^n` for one multiplier
//! `mu`, so all coordinates share a level of the pairing function
//! `g(x) = x / (1+x)^(alpha+1)`. For `alpha > 0` the function `g` rises to a
//! single peak at `x = 1/alpha` and falls back to zero, so a critical point
//! takes at most two distinct coordinate values, one on each side of the
//! peak. Enumeration therefore reduces to a one-dimensional root search per
//! split size.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // no_std float math; shadowed when tests link std
use num_traits::Float;

use crate::num::logspace;
use crate::problem::{ExtremumProblem, FeasiblePoint};
use crate::solve::{bisect, newton_polish};

/// Pairs with a large coordinate beyond this are outside the enumeration
/// window; the search floor is the conjugate of this cap.
const Y_CAP: f64 = 1e12;

/// Cells in the log-spaced sign-change sweep per split size.
const GRID_CELLS: usize = 1024;

/// Relative margin below the peak where the sweep stops; together with the
/// separation filter this keeps near-degenerate pair roots (which are the
/// symmetric point seen twice) out of the output.
const PEAK_MARGIN: f64 = 1e-5;

/// The pairing function `g(x) = x / (1+x)^(alpha+1)`, extended by its limit
/// at infinite `x`.
pub fn pairing(alpha: f64, x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x.is_infinite() {
        return if alpha + 1.0 > 0.0 { 0.0 } else { f64::INFINITY };
    }
    x / (1.0 + x).powf(alpha + 1.0)
}

/// Derivative `g'(x) = (1 - alpha*x) / (1+x)^(alpha+2)`.
pub fn pairing_derivative(alpha: f64, x: f64) -> f64 {
    (1.0 - alpha * x) / (1.0 + x).powf(alpha + 2.0)
}

/// For `alpha > 0` and `x` strictly below the peak `1/alpha`, the unique
/// `y > 1/alpha` with `g(y) = g(x)`. `None` when no such conjugate exists on
/// the other side of the peak, or when it lies beyond the supported range.
pub fn conjugate_root(alpha: f64, x: f64) -> Option<f64> {
    if alpha <= 0.0 || !(x > 0.0) || !x.is_finite() {
        return None;
    }
    let peak = 1.0 / alpha;
    if x >= peak {
        return None;
    }
    let target = pairing(alpha, x);
    let f = |y: f64| pairing(alpha, y) - target;
    let mut hi = 2.0 * peak;
    while f(hi) > 0.0 {
        hi *= 4.0;
        if hi > 1e300 {
            return None;
        }
    }
    let y = bisect(f, peak, hi, 1e-14, true).ok()?;
    Some(newton_polish(
        f,
        |y| pairing_derivative(alpha, y),
        y,
        peak,
        hi,
        4,
    ))
}

/// One interior stationary point: `small_count` coordinates at the smaller
/// value, the rest at the larger (all equal for the symmetric point, where
/// `small_count = n`).
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPoint {
    pub point: FeasiblePoint,
    /// Objective value at the point.
    pub value: f64,
    /// Multiplier `mu` with `grad F = mu * grad(product - lambda^n)`;
    /// equals `-alpha * g(x_i) / lambda^n` for every coordinate.
    pub multiplier: f64,
    /// Multiplicity of the smaller coordinate value; `n` when symmetric.
    pub small_count: usize,
}

fn multiplier(problem: &ExtremumProblem, x: f64) -> f64 {
    let alpha = problem.alpha();
    // exp form keeps the value meaningful when lambda^n over/underflows
    -alpha * pairing(alpha, x) * (-(problem.n() as f64) * problem.lambda().ln()).exp()
}

fn critical(problem: &ExtremumProblem, coords: Vec<f64>, small_count: usize) -> Option<CriticalPoint> {
    let x = coords[0];
    let point = FeasiblePoint::new(problem, coords).ok()?;
    let value = problem.evaluate(&point).ok()?;
    Some(CriticalPoint {
        point,
        value,
        multiplier: multiplier(problem, x),
        small_count,
    })
}

/// All interior stationary points, symmetric first, then two-value points
/// ordered by multiplicity of the small coordinate and then by its value.
///
/// For `alpha < 1e-8` (including every `alpha <= 0`) the pairing function is
/// injective on the supported range, so the symmetric point is the only
/// entry.
pub fn critical_points(problem: &ExtremumProblem) -> Vec<CriticalPoint> {
    let alpha = problem.alpha();
    let n = problem.n();
    let lambda = problem.lambda();

    let mut out = Vec::new();
    out.extend(critical(problem, vec![lambda; n], n));

    if alpha < 1e-8 {
        return out;
    }

    let peak = 1.0 / alpha;
    let x_hi = peak * (1.0 - PEAK_MARGIN);
    let floor = match pair_floor(alpha, x_hi) {
        Some(f) => f,
        None => return out,
    };

    let log_target = problem.log_product_target();
    let grid = logspace(floor, x_hi, GRID_CELLS + 1);
    for k in 1..n {
        // Split residual: k coordinates at x, n-k at the conjugate, product
        // constraint in log form.
        let h = |x: f64| match conjugate_root(alpha, x) {
            Some(y) => k as f64 * x.ln() + (n - k) as f64 * y.ln() - log_target,
            None => f64::NAN,
        };
        let mut roots: Vec<f64> = Vec::new();
        for w in grid.windows(2) {
            let (ha, hb) = (h(w[0]), h(w[1]));
            if !(ha.is_finite() && hb.is_finite()) || ha * hb > 0.0 {
                continue;
            }
            let Ok(root) = bisect(h, w[0], w[1], 1e-14, true) else {
                continue;
            };
            let dh = |x: f64| {
                let y = conjugate_root(alpha, x).unwrap_or(f64::NAN);
                k as f64 / x
                    + (n - k) as f64 * pairing_derivative(alpha, x)
                        / (pairing_derivative(alpha, y) * y)
            };
            let root = newton_polish(h, dh, root, w[0], w[1], 4);
            if roots.iter().all(|r| (r - root).abs() > 1e-10 * root) {
                roots.push(root);
            }
        }
        for x in roots {
            // Rebuild the large value from the constraint so the point is
            // feasible by construction.
            let y = ((log_target - k as f64 * x.ln()) / (n - k) as f64).exp();
            if y - x <= peak * 2.0 * PEAK_MARGIN {
                continue; // symmetric point rediscovered near the peak
            }
            let mut coords = vec![x; n];
            for c in coords[k..].iter_mut() {
                *c = y;
            }
            out.extend(critical(problem, coords, k));
        }
    }
    out[1..].sort_by(|a, b| {
        (a.small_count, a.point.coords()[0])
            .partial_cmp(&(b.small_count, b.point.coords()[0]))
            .expect("coordinates are finite")
    });
    out
}

/// Smallest admissible small-coordinate: the left-branch conjugate of
/// [`Y_CAP`]. `None` when the whole window below `x_hi` pairs beyond the cap.
fn pair_floor(alpha: f64, x_hi: f64) -> Option<f64> {
    let t_cap = pairing(alpha, Y_CAP);
    if !(pairing(alpha, x_hi) > t_cap) {
        return None;
    }
    // g(x) < x on the rising branch, so t_cap/2 brackets from below.
    let f = |x: f64| pairing(alpha, x) - t_cap;
    bisect(f, 0.5 * t_cap, x_hi, 1e-14, true).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(alpha: f64, n: usize, lambda: f64) -> ExtremumProblem {
        ExtremumProblem::new(alpha, n, lambda).unwrap()
    }

    #[test]
    fn pairing_peaks_at_reciprocal_alpha() {
        for alpha in [0.5, 1.0, 2.0, 7.0] {
            let peak = 1.0 / alpha;
            let at_peak = pairing(alpha, peak);
            assert!(pairing(alpha, peak * 0.9) < at_peak);
            assert!(pairing(alpha, peak * 1.1) < at_peak);
            assert!(pairing_derivative(alpha, peak).abs() < 1e-15);
        }
    }

    #[test]
    fn pairing_limits() {
        assert_eq!(pairing(2.0, 0.0), 0.0);
        assert_eq!(pairing(2.0, f64::INFINITY), 0.0);
        assert_eq!(pairing(-1.5, f64::INFINITY), f64::INFINITY);
        // Saturates instead of producing NaN for huge finite inputs.
        assert_eq!(pairing(3.0, 1e300), 0.0);
    }

    #[test]
    fn conjugate_matches_level() {
        for (alpha, x) in [(2.0, 0.1), (2.0, 0.49), (0.5, 0.3), (1.0, 0.997)] {
            let y = conjugate_root(alpha, x).unwrap();
            assert!(y > 1.0 / alpha);
            let rel = (pairing(alpha, y) - pairing(alpha, x)).abs() / pairing(alpha, x);
            assert!(rel < 1e-12, "alpha {alpha} x {x} rel {rel}");
        }
    }

    #[test]
    fn conjugate_rejects_past_peak() {
        assert!(conjugate_root(2.0, 0.5).is_none());
        assert!(conjugate_root(2.0, 0.7).is_none());
        assert!(conjugate_root(-1.0, 0.3).is_none());
    }

    #[test]
    fn known_conjugate_pair() {
        // For alpha = 2 the pair with sum 13, product 1/16 shares a level:
        // x*(1+y)^3 - y*(1+x)^3 factors as (x-y)*(1 - 3*xy - xy*(x+y)) = 0.
        let x = (13.0 - 168.75f64.sqrt()) / 2.0;
        let y = conjugate_root(2.0, x).unwrap();
        assert!((x + y - 13.0).abs() < 1e-9, "sum {}", x + y);
        assert!((x * y - 0.0625).abs() < 1e-12);
    }

    #[test]
    fn symmetric_point_always_listed() {
        let cps = critical_points(&problem(-1.5, 3, 2.0));
        assert_eq!(cps.len(), 1);
        assert_eq!(cps[0].small_count, 3);
        assert_eq!(cps[0].point.coords(), &[2.0, 2.0, 2.0]);
        let expected = 3.0 * 3.0f64.powf(1.5);
        assert!((cps[0].value - expected).abs() < 1e-12);
    }

    #[test]
    fn pair_enumeration_matches_quadratic() {
        // alpha = 2, n = 2, lambda = 1/4: symmetric plus the sum-13 pair.
        let cps = critical_points(&problem(2.0, 2, 0.25));
        assert_eq!(cps.len(), 2);
        assert_eq!(cps[0].small_count, 2);
        let pair = &cps[1];
        assert_eq!(pair.small_count, 1);
        let c = pair.point.coords();
        assert!((c[0] + c[1] - 13.0).abs() < 1e-9);
        assert!((pair.value - 224.0 / 225.0).abs() < 1e-12);
        // both points carry a negative multiplier for alpha > 0
        assert!(cps[0].multiplier < 0.0 && pair.multiplier < 0.0);
    }

    #[test]
    fn no_pair_when_lambda_too_large() {
        // alpha = 2, n = 2: pairs exist only for lambda < 1/2.
        let cps = critical_points(&problem(2.0, 2, 0.8));
        assert_eq!(cps.len(), 1);
    }

    #[test]
    fn near_branch_point_pairs() {
        // Close below the pair-existence threshold lambda = 1/2 the pair is
        // still separated (gap ~ 2e-3 here) and must be found.
        let cps = critical_points(&problem(2.0, 2, 0.4999999));
        assert_eq!(cps.len(), 2);
        let c = cps[1].point.coords();
        assert!(c[1] - c[0] > 1e-4 && c[1] - c[0] < 1e-2);
        // Within the degeneracy margin of the peak the pair collapses into
        // the symmetric point and must not be reported twice.
        let cps = critical_points(&problem(2.0, 2, 0.5 - 1e-12));
        assert_eq!(cps.len(), 1);
    }

    #[test]
    fn multi_coordinate_splits() {
        // alpha = 2, n = 4, small lambda: splits with k = 1..3 all solvable.
        let p = problem(2.0, 4, 0.05);
        let cps = critical_points(&p);
        assert!(cps.len() > 1, "expected pair points, got {}", cps.len());
        for cp in &cps[1..] {
            let c = cp.point.coords();
            let (x, y) = (c[0], c[c.len() - 1]);
            assert_eq!(c.iter().filter(|&&v| v == x).count(), cp.small_count);
            let rel = (pairing(2.0, y) - pairing(2.0, x)).abs() / pairing(2.0, x);
            assert!(rel < 1e-9, "level residual {rel}");
        }
        // sorted by split size then coordinate
        for w in cps[1..].windows(2) {
            assert!(w[0].small_count <= w[1].small_count);
        }
    }

    #[test]
    fn stationarity_residual_is_small() {
        // grad F = mu * grad(constraint) at every reported point
        let p = problem(2.0, 2, 0.25);
        for cp in critical_points(&p) {
            let lam_n = p.lambda().powi(p.n() as i32);
            for &x in cp.point.coords() {
                let grad_f = -2.0 / (1.0 + x).powi(3); // d/dx of (1+x)^-2
                let grad_c = lam_n / x;
                let resid = (grad_f - cp.multiplier * grad_c).abs() / grad_f.abs();
                assert!(resid < 1e-9, "residual {resid}");
            }
        }
    }

    #[test]
    fn tiny_alpha_collapses_to_symmetric() {
        let cps = critical_points(&problem(1e-9, 3, 5.0));
        assert_eq!(cps.len(), 1);
    }
}
