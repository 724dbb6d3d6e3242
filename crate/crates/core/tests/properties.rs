//! Randomized invariants across the public API: symmetry and bounds of the
//! objective, pairing-function structure, coherence of closed-form results,
//! one-sidedness of the numeric route, and certifier identities.

use extrema_core::certify;
use extrema_core::closed_form::{extremum, ExtremumOutcome};
use extrema_core::oracle::{self, OracleConfig};
use extrema_core::stationarity::{conjugate_root, critical_points, pairing, pairing_derivative};
use extrema_core::{Direction, ExtendedReal, ExtremumProblem, FeasiblePoint};
use proptest::prelude::*;

fn problem(alpha: f64, n: usize, lambda: f64) -> ExtremumProblem {
    ExtremumProblem::new(alpha, n, lambda).unwrap()
}

fn log_range(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

fn offsets(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-4.0..4.0f64, n - 1)
}

proptest! {
    #[test]
    fn objective_is_permutation_invariant(
        alpha in -3.0..3.0f64,
        (n, free) in (2usize..6).prop_flat_map(|n| (Just(n), offsets(n))),
        lambda in log_range(1e-2, 1e2),
        shift in 1usize..5,
    ) {
        let p = problem(alpha, n, lambda);
        let point = oracle::point_from_offsets(&p, &free).unwrap();
        let value = p.evaluate(&point).unwrap();
        let mut rotated = point.coords().to_vec();
        rotated.rotate_left(shift % n);
        let other = FeasiblePoint::new(&p, rotated).unwrap();
        let rotated_value = p.evaluate(&other).unwrap();
        prop_assert!(
            (value - rotated_value).abs() <= 1e-13 * value.abs().max(1.0),
            "{value} vs {rotated_value}"
        );
    }

    #[test]
    fn objective_bounds_follow_sign_of_exponent(
        mag in 0.01..3.0f64,
        negative in any::<bool>(),
        (n, free) in (2usize..6).prop_flat_map(|n| (Just(n), offsets(n))),
        lambda in log_range(1e-2, 1e2),
    ) {
        let alpha = if negative { -mag } else { mag };
        let p = problem(alpha, n, lambda);
        let point = oracle::point_from_offsets(&p, &free).unwrap();
        let value = p.evaluate(&point).unwrap();
        if negative {
            prop_assert!(value > n as f64);
        } else {
            prop_assert!(value > 0.0 && value < n as f64);
        }
    }

    #[test]
    fn rescaled_points_violate_the_constraint(
        (n, free) in (2usize..6).prop_flat_map(|n| (Just(n), offsets(n))),
        lambda in log_range(1e-1, 1e1),
        scale in 1.01..10.0f64,
    ) {
        let p = problem(1.0, n, lambda);
        let point = oracle::point_from_offsets(&p, &free).unwrap();
        let scaled: Vec<f64> = point.coords().iter().map(|x| x * scale).collect();
        prop_assert!(FeasiblePoint::new(&p, scaled).is_err());
    }

    #[test]
    fn pairing_is_unimodal_around_its_peak(
        alpha in 0.05..5.0f64,
        lo in 0.002..0.9f64,
        gap in 1.001..20.0f64,
        above in 1.002..50.0f64,
        stretch in 1.001..20.0f64,
    ) {
        let peak = 1.0 / alpha;
        let hi = (lo * gap).min(0.999);
        prop_assume!(hi > lo * 1.0001);
        prop_assert!(pairing(alpha, lo * peak) < pairing(alpha, hi * peak));
        prop_assert!(pairing(alpha, above * peak) > pairing(alpha, above * stretch * peak));
    }

    #[test]
    fn pairing_derivative_matches_difference_quotient(
        alpha in 0.05..5.0f64,
        x in log_range(1e-3, 1e3),
    ) {
        let d = pairing_derivative(alpha, x);
        let h = 1e-5 * x;
        let fd = (pairing(alpha, x + h) - pairing(alpha, x - h)) / (2.0 * h);
        let scale = d.abs().max(pairing(alpha, x) / x);
        prop_assert!((d - fd).abs() <= 1e-6 * scale, "{d} vs {fd}");
    }

    #[test]
    fn conjugate_shares_the_level_and_orders(
        alpha in 0.05..5.0f64,
        frac in 0.002..0.99f64,
        shrink in 0.05..0.5f64,
    ) {
        let x = frac / alpha;
        let y = conjugate_root(alpha, x);
        prop_assume!(y.is_some());
        let y = y.unwrap();
        prop_assert!(y > 1.0 / alpha);
        let level = pairing(alpha, x);
        prop_assert!((pairing(alpha, y) - level).abs() <= 1e-8 * level);
        // smaller x means lower level, so a conjugate further out
        let y2 = conjugate_root(alpha, x * (1.0 - shrink));
        prop_assume!(y2.is_some());
        prop_assert!(y2.unwrap() > y);
    }

    #[test]
    fn branch_values_meet_continuously(eps in log_range(1e-9, 1e-3)) {
        let below = extremum(&problem(2.0, 2, 0.5 - eps), Direction::Inf);
        let above = extremum(&problem(2.0, 2, 0.5 + eps), Direction::Inf);
        let b = below.known().unwrap().value.finite().unwrap();
        let a = above.known().unwrap().value.finite().unwrap();
        prop_assert!((b - a).abs() <= 3.0 * eps + 1e-12, "{b} vs {a}");

        let below = extremum(&problem(0.5, 2, 2.0 - eps), Direction::Sup);
        let above = extremum(&problem(0.5, 2, 2.0 + eps), Direction::Sup);
        let b = below.known().unwrap().value.finite().unwrap();
        let a = above.known().unwrap().value.finite().unwrap();
        prop_assert!((b - a).abs() <= eps + 1e-12, "{b} vs {a}");
    }

    #[test]
    fn chain_margins_are_nonnegative(
        beta in prop_oneof![9 => 1.0..10.0f64, 1 => Just(1.0)],
        u in log_range(1e-6, 0.999999),
    ) {
        let m = certify::chain_margins(beta, u);
        prop_assert!(m.holds(), "{m:?} at beta={beta} u={u}");
        // against the naive forms wherever those are well conditioned
        let lhs = (1.0 + u).powf(beta);
        if m.bernoulli > 1e-8 * lhs {
            let naive = lhs - (1.0 + beta * u);
            prop_assert!((m.bernoulli - naive).abs() <= 1e-10 * lhs);
        }
        if u < 0.99 {
            let naive = (1.0 + beta * u) - (1.0 - u.powf(beta + 1.0)) / (1.0 - u);
            prop_assert!((m.geometric - naive).abs() <= 1e-10 * lhs.max(1.0));
        }
    }

    #[test]
    fn small_exponent_margin_and_auxiliary_agree(
        beta in 0.02..0.98f64,
        u in log_range(1e-6, 0.9999),
    ) {
        let m = certify::small_beta_margin(beta, u);
        prop_assert!(m > -1e-15, "margin {m} at beta={beta} u={u}");
        let aux = certify::aux_value(beta, u);
        let diff = (aux - (1.0 - u) * m).abs();
        prop_assert!(diff <= 5e-15 + 1e-12 * aux.abs(), "aux {aux} vs margin {m}");
    }

    #[test]
    fn substitution_value_matches_objective(
        a in log_range(10f64.powf(-1.5), 10f64.powf(1.5)),
        b in log_range(10f64.powf(-1.5), 10f64.powf(1.5)),
        c in log_range(10f64.powf(-1.5), 10f64.powf(1.5)),
        lambda in log_range(1e-1, 16.0),
        t in log_range(1e-1, 1e1),
    ) {
        let direct = certify::imo_value(a, b, c, lambda);
        let p = problem(0.5, 3, lambda);
        let mapped = certify::imo_map(a, b, c, lambda);
        let point = FeasiblePoint::new(&p, mapped.to_vec()).unwrap();
        let through = p.evaluate(&point).unwrap();
        prop_assert!((direct - through).abs() <= 1e-12 * direct.max(1.0));
        let scaled = certify::imo_value(t * a, t * b, t * c, lambda);
        prop_assert!((direct - scaled).abs() <= 1e-12 * direct.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn results_are_internally_coherent(
        alpha in -3.0..3.0f64,
        n in 2usize..8,
        lambda in log_range(1e-2, 1e2),
        sup in any::<bool>(),
    ) {
        let direction = if sup { Direction::Sup } else { Direction::Inf };
        let p = problem(alpha, n, lambda);
        match extremum(&p, direction) {
            ExtremumOutcome::Known(r) => {
                prop_assert!(!r.regime.is_open());
                if r.attained {
                    prop_assert!(r.boundary.is_none());
                    let v = r.value.finite().expect("attained value is finite");
                    let w = r.witness.as_ref().expect("attained needs a witness");
                    let f = p.evaluate(w).unwrap();
                    prop_assert!((f - v).abs() <= 1e-11 * v.abs().max(1.0), "{f} vs {v}");
                } else {
                    prop_assert!(r.witness.is_none());
                    let b = r.boundary.as_ref().expect("limit needs a boundary family");
                    prop_assert_eq!(b.to_zero + b.to_infinity, n);
                    if r.value == ExtendedReal::PosInfinity {
                        prop_assert!(alpha < 0.0 && direction == Direction::Sup);
                    }
                }
            }
            ExtremumOutcome::Open(o) => {
                prop_assert!(o.regime.is_open());
                prop_assert_eq!(o.direction, direction);
                prop_assert!(o.bound.is_finite() && o.bound > 0.0);
            }
        }
    }

    #[test]
    fn proven_bounds_sandwich_every_feasible_point(
        alpha in 1.0..3.0f64,
        (n, free) in (4usize..7).prop_flat_map(|n| (Just(n), offsets(n))),
        lambda in log_range(10f64.powf(-1.5), 10f64.powf(1.5)),
    ) {
        let p = problem(alpha, n, lambda);
        let point = oracle::point_from_offsets(&p, &free).unwrap();
        let value = p.evaluate(&point).unwrap();
        let inf = extremum(&p, Direction::Inf).known().unwrap().value.finite().unwrap();
        let sup = extremum(&p, Direction::Sup).known().unwrap().value.finite().unwrap();
        let slack = 1e-9 * value.abs().max(1.0);
        prop_assert!(inf <= value + slack, "inf {inf} above {value}");
        prop_assert!(value <= sup + slack, "sup {sup} below {value}");
    }

    #[test]
    fn stationary_points_share_one_pairing_level(
        alpha in 0.1..4.0f64,
        n in 2usize..5,
        lambda in log_range(0.2, 5.0),
    ) {
        let p = problem(alpha, n, lambda);
        let points = critical_points(&p);
        prop_assert!(!points.is_empty());
        prop_assert_eq!(points[0].small_count, n);
        for cp in &points {
            let coords = cp.point.coords();
            let level = pairing(alpha, coords[0]);
            for &x in coords {
                prop_assert!((pairing(alpha, x) - level).abs() <= 1e-7 * level);
            }
            let value = p.evaluate(&cp.point).unwrap();
            prop_assert!((cp.value - value).abs() <= 1e-12 * value.abs().max(1.0));
            let small = coords.iter().fold(f64::INFINITY, |m, &x| m.min(x));
            let count = coords.iter().filter(|&&x| x <= small * (1.0 + 1e-9)).count();
            prop_assert_eq!(cp.small_count, count);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn numeric_route_never_beats_certified_values(
        mag in 0.3..1.0f64,
        sup in any::<bool>(),
        n in 2usize..5,
        lambda in log_range(1e-1, 1e1),
        seed in any::<u64>(),
    ) {
        // exponents picked to land in proven regimes for the direction
        let alpha = if sup { mag + 1.0 } else { mag };
        let direction = if sup { Direction::Sup } else { Direction::Inf };
        let p = problem(alpha, n, lambda);
        let v = extremum(&p, direction).known().unwrap().value.finite().unwrap();
        let cfg = OracleConfig { starts: 6, seed, box_radius: 20.0, ..OracleConfig::default() };
        let est = oracle::estimate(&p, direction, &cfg).unwrap();
        let slack = 1e-9 * v.abs().max(1.0);
        match direction {
            Direction::Inf => prop_assert!(est.value >= v - slack, "{} below {v}", est.value),
            Direction::Sup => prop_assert!(est.value <= v + slack, "{} above {v}", est.value),
        }
    }
}
