//! Small numeric helpers shared across modules.

use alloc::vec::Vec;
// Needed for float math in no_std builds; shadowed by inherent methods when
// tests link std.
#[allow(unused_imports)]
use num_traits::Float;

/// Compensated (Neumaier) summation. Keeps the error of long, cancelling
/// sums near one ulp of the true result, which matters when feasibility is
/// checked in log-space with coordinates spanning hundreds of e-folds.
pub(crate) fn comp_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Roots of `t^2 - s*t + p = 0` for `s > 0`, computed without cancellation:
/// the larger root from the quadratic formula, the smaller as `p` over it.
/// Returns `(lo, hi)`; `None` when the discriminant is negative.
pub(crate) fn stable_quadratic_roots(s: f64, p: f64) -> Option<(f64, f64)> {
    let disc = s * s - 4.0 * p;
    if disc < 0.0 {
        return None;
    }
    let hi = 0.5 * (s + disc.sqrt());
    if hi == 0.0 {
        return Some((0.0, 0.0));
    }
    Some((p / hi, hi))
}

/// `count` points log-uniformly spaced over `[lo, hi]`, endpoints included.
pub fn logspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    debug_assert!(lo > 0.0 && hi > 0.0 && count >= 2);
    let (llo, lhi) = (lo.ln(), hi.ln());
    let step = (lhi - llo) / (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == count - 1 {
                hi
            } else {
                (llo + step * i as f64).exp()
            }
        })
        .collect()
}

/// Exact test of `a * b >= 1` for finite nonnegative `a`, `b`. The rounded
/// product alone can land on the wrong side of 1; the fused residual
/// recovers the true ordering.
pub(crate) fn product_at_least_one(a: f64, b: f64) -> bool {
    let p = a * b;
    // Rounding to nearest is monotone and 1.0 is representable, so a rounded
    // product strictly off 1 is on the correct side; only p == 1 is ambiguous.
    if p != 1.0 {
        return p > 1.0;
    }
    a.mul_add(b, -1.0) >= 0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn comp_sum_cancels_large_terms() {
        let v = vec![1e16, 1.0, -1e16, 1.0];
        assert_eq!(comp_sum(v), 2.0);
    }

    #[test]
    fn quadratic_roots_recover_sum_and_product() {
        let (lo, hi) = stable_quadratic_roots(13.0, 1.0 / 16.0).unwrap();
        assert!((lo + hi - 13.0).abs() < 1e-12);
        assert!((lo * hi - 1.0 / 16.0).abs() < 1e-16);
        // Small root is immune to cancellation.
        assert!((lo - 0.0625 / hi).abs() < 1e-18);
    }

    #[test]
    fn quadratic_roots_negative_discriminant() {
        assert!(stable_quadratic_roots(1.0, 1.0).is_none());
    }

    #[test]
    fn quadratic_roots_double_root() {
        let (lo, hi) = stable_quadratic_roots(1.0, 0.25).unwrap();
        assert_eq!(lo, 0.5);
        assert_eq!(hi, 0.5);
    }

    #[test]
    fn logspace_endpoints_exact() {
        let g = logspace(1e-3, 1e3, 33);
        assert_eq!(g.len(), 33);
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[32], 1e3);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn product_comparison_is_exact_at_the_boundary() {
        assert!(product_at_least_one(4.0, 0.25));
        assert!(product_at_least_one(2.0, 0.5000000000000001));
        assert!(!product_at_least_one(2.0, 0.49999999999999994));
        // The rounded products are exactly 1; the true products straddle it.
        assert!(!product_at_least_one(3.0, 1.0f64 / 3.0));
        assert!(!product_at_least_one(9.0, 1.0f64 / 9.0));
        assert!(product_at_least_one(5.0, 0.2));
        assert!(product_at_least_one(1e6, 1e-6 + 1e-18));
    }
}
