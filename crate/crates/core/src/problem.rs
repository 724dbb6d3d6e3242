//! Problem statement, feasible points, objective evaluation and the
//! degenerate boundary limits of the constraint set.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
#[allow(unused_imports)] // no_std float math; shadowed when tests link std
use num_traits::Float;

use crate::num::comp_sum;

/// Relative tolerance on the coordinate product, enforced in log-space.
pub const FEASIBILITY_LOG_TOL: f64 = 1e-12;

/// The extremum problem: `F(x) = sum_i (1 + x_i)^(-alpha)` over vectors with
/// `x_i > 0` and `x_1 * ... * x_n = lambda^n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremumProblem {
    alpha: f64,
    n: usize,
    lambda: f64,
}

/// Rejected problem statements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProblemError {
    /// `n` must be at least 2.
    CountTooSmall(usize),
    /// `lambda` must be a positive finite real.
    BadLambda(f64),
    /// `alpha` must be finite.
    BadAlpha(f64),
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemError::CountTooSmall(n) => write!(f, "need at least 2 coordinates, got {n}"),
            ProblemError::BadLambda(l) => write!(f, "lambda must be positive and finite, got {l}"),
            ProblemError::BadAlpha(a) => write!(f, "alpha must be finite, got {a}"),
        }
    }
}

impl ExtremumProblem {
    pub fn new(alpha: f64, n: usize, lambda: f64) -> Result<Self, ProblemError> {
        if !alpha.is_finite() {
            return Err(ProblemError::BadAlpha(alpha));
        }
        if n < 2 {
            return Err(ProblemError::CountTooSmall(n));
        }
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(ProblemError::BadLambda(lambda));
        }
        Ok(Self { alpha, n, lambda })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `n * ln(lambda)`, the log of the constrained coordinate product.
    pub fn log_product_target(&self) -> f64 {
        self.n as f64 * self.lambda.ln()
    }

    /// Evaluates the objective at a point, re-validating feasibility against
    /// this problem (the point may have been built for another one).
    pub fn evaluate(&self, point: &FeasiblePoint) -> Result<f64, EvalError> {
        check_feasible(self, point.coords())?;
        let value = objective_unchecked(self.alpha, point.coords());
        if !value.is_finite() {
            return Err(EvalError::NonFiniteResult(value));
        }
        Ok(value)
    }
}

/// A positive vector satisfying the product constraint of the problem it was
/// validated against.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct FeasiblePoint {
    coords: Vec<f64>,
}

impl FeasiblePoint {
    pub fn new(problem: &ExtremumProblem, coords: Vec<f64>) -> Result<Self, EvalError> {
        check_feasible(problem, &coords)?;
        Ok(Self { coords })
    }

    /// The symmetric point `(lambda, ..., lambda)`.
    pub fn symmetric(problem: &ExtremumProblem) -> Self {
        Self {
            coords: vec![problem.lambda(); problem.n()],
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }
}

/// Feasibility violations, naming the broken invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalError {
    /// Coordinate count does not match `n`.
    WrongArity { expected: usize, got: usize },
    /// A coordinate is zero, negative or NaN.
    CoordinateNotPositive { index: usize, value: f64 },
    /// A coordinate is infinite.
    CoordinateNotFinite { index: usize },
    /// The coordinate product misses `lambda^n` beyond tolerance
    /// (both sides reported in log-space).
    ProductMismatch { log_product: f64, log_target: f64 },
    /// The objective overflowed.
    NonFiniteResult(f64),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::WrongArity { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
            EvalError::CoordinateNotPositive { index, value } => {
                write!(f, "coordinate {index} must be strictly positive, got {value}")
            }
            EvalError::CoordinateNotFinite { index } => {
                write!(f, "coordinate {index} is not finite")
            }
            EvalError::ProductMismatch {
                log_product,
                log_target,
            } => write!(
                f,
                "coordinate product misses the constraint: log-product {log_product} vs target {log_target}"
            ),
            EvalError::NonFiniteResult(v) => write!(f, "objective is not finite ({v})"),
        }
    }
}

fn check_feasible(problem: &ExtremumProblem, coords: &[f64]) -> Result<(), EvalError> {
    if coords.len() != problem.n() {
        return Err(EvalError::WrongArity {
            expected: problem.n(),
            got: coords.len(),
        });
    }
    for (index, &x) in coords.iter().enumerate() {
        if !(x > 0.0) {
            return Err(EvalError::CoordinateNotPositive { index, value: x });
        }
        if !x.is_finite() {
            return Err(EvalError::CoordinateNotFinite { index });
        }
    }
    let log_target = problem.log_product_target();
    let log_product = comp_sum(coords.iter().map(|x| x.ln()));
    // The log-sum cannot be measured below its own conditioning: each ln
    // carries ~1 ulp of absolute error proportional to its magnitude.
    let noise_floor = f64::EPSILON * comp_sum(coords.iter().map(|x| x.ln().abs()));
    if (log_product - log_target).abs() > FEASIBILITY_LOG_TOL + noise_floor {
        return Err(EvalError::ProductMismatch {
            log_product,
            log_target,
        });
    }
    Ok(())
}

/// `(1 + x)^(-alpha)`, the objective summand. Saturates correctly at the
/// ends of the positive axis (`x -> 0` gives 1, `x -> inf` gives 0 for
/// `alpha > 0` and `+inf` for `alpha < 0`).
pub(crate) fn phi(alpha: f64, x: f64) -> f64 {
    (1.0 + x).powf(-alpha)
}

/// Objective sum without feasibility checks; the oracle keeps points feasible
/// by construction and calls this in its hot loop.
pub(crate) fn objective_unchecked(alpha: f64, coords: &[f64]) -> f64 {
    comp_sum(coords.iter().map(|&x| phi(alpha, x)))
}

/// Direction of optimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Inf,
    Sup,
}

impl Direction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::Inf => "inf",
            Direction::Sup => "sup",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A real number extended with `+inf` (suprema for `alpha < 0` diverge).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    PosInfinity,
}

impl ExtendedReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(v) => Some(v),
            ExtendedReal::PosInfinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    /// Collapses to `f64`, mapping `PosInfinity` to `f64::INFINITY`.
    pub fn as_f64(self) -> f64 {
        match self {
            ExtendedReal::Finite(v) => v,
            ExtendedReal::PosInfinity => f64::INFINITY,
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(v: f64) -> Self {
        ExtendedReal::Finite(v)
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(v) => write!(f, "{v}"),
            ExtendedReal::PosInfinity => f.write_str("inf"),
        }
    }
}

/// Regime labels used across results, reports and serialized output.
///
/// Each label fixes a direction (or both, for `alpha = 0`) and the parameter
/// region `(alpha, n)` it covers; classification never depends on `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeTag {
    /// inf, `0 < alpha <= 1`: `min(1, n/(1+lambda)^alpha)`.
    InfP1,
    /// inf, `alpha > 1` and `n >= alpha + 1`: same formula as `INF_P1`.
    InfP2,
    /// inf, `alpha = 2, n = 2`: two-branch closed form in `lambda`.
    InfEx1,
    /// inf, `alpha < 0`: `n/(1+lambda)^alpha`, always attained.
    InfP3,
    /// inf, `alpha > 1` and `n < alpha + 1` (except `INF_EX1`): open.
    InfOpen,
    /// sup, `alpha >= 1`: `max(n-1, n/(1+lambda)^alpha)`.
    SupP4,
    /// sup, `0 < alpha < 1` and `n >= 1/alpha + 1`: same formula as `SUP_P4`.
    SupP5,
    /// sup, `alpha = 1/2, n = 2`: two-branch closed form in `lambda`.
    SupEx2,
    /// `alpha = 0`: the objective is constantly `n`; inf = sup = n.
    SupInfAlpha0,
    /// sup, `alpha < 0`: `+inf`, never attained.
    SupNeg,
    /// sup, `0 < alpha < 1` and `n < 1/alpha + 1` (except `SUP_EX2`): open.
    SupOpen,
}

impl RegimeTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeTag::InfP1 => "INF_P1",
            RegimeTag::InfP2 => "INF_P2",
            RegimeTag::InfEx1 => "INF_EX1",
            RegimeTag::InfP3 => "INF_P3",
            RegimeTag::InfOpen => "INF_OPEN",
            RegimeTag::SupP4 => "SUP_P4",
            RegimeTag::SupP5 => "SUP_P5",
            RegimeTag::SupEx2 => "SUP_EX2",
            RegimeTag::SupInfAlpha0 => "SUP_INF_ALPHA0",
            RegimeTag::SupNeg => "SUP_NEG",
            RegimeTag::SupOpen => "SUP_OPEN",
        }
    }

    /// Open regimes have no proven closed form.
    pub fn is_open(&self) -> bool {
        matches!(self, RegimeTag::InfOpen | RegimeTag::SupOpen)
    }
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How an extremum value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Numeric,
    Unknown,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Numeric => "numeric",
            Method::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Degenerate family along which a non-attained extremum is approached:
/// `to_zero` coordinates shrink to 0 while `to_infinity` grow without bound
/// (the product constraint forces the two groups to trade off).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundaryDescription {
    pub to_zero: usize,
    pub to_infinity: usize,
}

impl fmt::Display for BoundaryDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} coordinate(s) -> 0, {} -> +inf",
            self.to_zero, self.to_infinity
        )
    }
}

/// Outcome of an extremum computation in a regime with a known answer.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExtremumResult {
    pub value: ExtendedReal,
    pub attained: bool,
    /// Present exactly when the extremum is attained.
    pub witness: Option<FeasiblePoint>,
    /// Present when the extremum is only approached along a degenerate family.
    pub boundary: Option<BoundaryDescription>,
    pub regime: RegimeTag,
    pub method: Method,
}

/// Values of `F` approached along degenerate boundary families.
///
/// For `alpha > 0` sending `s` coordinates to 0 (and the rest to `+inf`)
/// yields the limit `s`, for `s = 1, ..., n-1`. For `alpha < 0` any
/// degeneration blows up, leaving `+inf` as the only candidate. For
/// `alpha = 0` the objective is constantly `n`.
pub fn boundary_candidates(problem: &ExtremumProblem) -> Vec<ExtendedReal> {
    let alpha = problem.alpha();
    if alpha > 0.0 {
        (1..problem.n())
            .map(|s| ExtendedReal::Finite(s as f64))
            .collect()
    } else if alpha < 0.0 {
        vec![ExtendedReal::PosInfinity]
    } else {
        vec![ExtendedReal::Finite(problem.n() as f64)]
    }
}

#[cfg(feature = "serde")]
mod serde_impls {
    use super::*;
    use serde::ser::{Serialize, Serializer};

    impl Serialize for ExtendedReal {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            match self {
                ExtendedReal::Finite(v) => s.serialize_f64(*v),
                ExtendedReal::PosInfinity => s.serialize_str("inf"),
            }
        }
    }

    impl Serialize for RegimeTag {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(self.as_str())
        }
    }

    impl Serialize for Method {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(self.as_str())
        }
    }

    impl Serialize for Direction {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(self.as_str())
        }
    }
}

#[cfg(feature = "std")]
mod std_impls {
    use super::*;

    impl std::error::Error for ProblemError {}
    impl std::error::Error for EvalError {}
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(alpha: f64, n: usize, lambda: f64) -> ExtremumProblem {
        ExtremumProblem::new(alpha, n, lambda).unwrap()
    }

    #[test]
    fn rejects_bad_statements() {
        assert_eq!(
            ExtremumProblem::new(1.0, 1, 1.0),
            Err(ProblemError::CountTooSmall(1))
        );
        assert_eq!(
            ExtremumProblem::new(1.0, 3, 0.0),
            Err(ProblemError::BadLambda(0.0))
        );
        assert_eq!(
            ExtremumProblem::new(1.0, 3, -2.0),
            Err(ProblemError::BadLambda(-2.0))
        );
        assert!(ExtremumProblem::new(f64::NAN, 3, 1.0).is_err());
        assert!(ExtremumProblem::new(f64::INFINITY, 3, 1.0).is_err());
        assert!(ExtremumProblem::new(1.0, 3, f64::INFINITY).is_err());
    }

    #[test]
    fn evaluates_symmetric_point() {
        let p = problem(0.5, 3, 8.0);
        let point = FeasiblePoint::symmetric(&p);
        let f = p.evaluate(&point).unwrap();
        assert!((f - 1.0).abs() < 1e-15, "F(8,8,8) = {f}");
    }

    #[test]
    fn alpha_zero_is_constant() {
        let p = problem(0.0, 5, 3.0);
        let point = FeasiblePoint::symmetric(&p);
        assert_eq!(p.evaluate(&point).unwrap(), 5.0);
        let skew = FeasiblePoint::new(&p, alloc::vec![1.0, 9.0, 3.0, 3.0, 3.0]).unwrap();
        assert_eq!(p.evaluate(&skew).unwrap(), 5.0);
    }

    #[test]
    fn evaluates_asymmetric_critical_pair() {
        // alpha = 2, n = 2, lambda = 1/4: the pair has sum 13, product 1/16.
        let p = problem(2.0, 2, 0.25);
        let disc: f64 = 13.0 * 13.0 - 4.0 / 16.0;
        let hi = 0.5 * (13.0 + disc.sqrt());
        let lo = (1.0 / 16.0) / hi;
        let point = FeasiblePoint::new(&p, alloc::vec![lo, hi]).unwrap();
        let f = p.evaluate(&point).unwrap();
        assert!((f - 224.0 / 225.0).abs() < 1e-12, "F = {f}");
    }

    #[test]
    fn evaluation_is_permutation_invariant() {
        let p = problem(1.3, 4, 2.0);
        let coords = alloc::vec![0.5, 4.0, 2.0, 4.0];
        let shuffled = alloc::vec![4.0, 2.0, 4.0, 0.5];
        let a = p.evaluate(&FeasiblePoint::new(&p, coords).unwrap()).unwrap();
        let b = p
            .evaluate(&FeasiblePoint::new(&p, shuffled).unwrap())
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_infeasible_points() {
        let p = problem(1.0, 3, 2.0);
        match FeasiblePoint::new(&p, alloc::vec![1.0, 2.0, 3.0]) {
            Err(EvalError::ProductMismatch { .. }) => {}
            other => panic!("expected product mismatch, got {other:?}"),
        }
        match FeasiblePoint::new(&p, alloc::vec![-1.0, 2.0, -4.0]) {
            Err(EvalError::CoordinateNotPositive { index: 0, .. }) => {}
            other => panic!("expected positivity failure, got {other:?}"),
        }
        match FeasiblePoint::new(&p, alloc::vec![1.0, 8.0]) {
            Err(EvalError::WrongArity {
                expected: 3,
                got: 2,
            }) => {}
            other => panic!("expected arity failure, got {other:?}"),
        }
        match FeasiblePoint::new(&p, alloc::vec![f64::INFINITY, 2.0, 4.0]) {
            Err(EvalError::CoordinateNotFinite { index: 0 }) => {}
            other => panic!("expected finiteness failure, got {other:?}"),
        }
    }

    #[test]
    fn feasibility_tolerates_extreme_magnitudes() {
        // Legitimate points from log-space constructions span hundreds of
        // e-folds; the check must not reject them for conditioning noise.
        let p = problem(0.5, 2, 1.0);
        let point = FeasiblePoint::new(&p, alloc::vec![600f64.exp(), (-600f64).exp()]);
        assert!(point.is_ok(), "{point:?}");
    }

    #[test]
    fn feasibility_rejects_scaled_points() {
        let p = problem(0.5, 3, 2.0);
        for scale in [1.000001, 0.999999, 1.5, 10.0] {
            let coords = alloc::vec![2.0 * scale, 2.0, 2.0];
            assert!(
                FeasiblePoint::new(&p, coords).is_err(),
                "scale {scale} accepted"
            );
        }
    }

    #[test]
    fn boundary_candidate_families() {
        let tags = |a, n, l| boundary_candidates(&problem(a, n, l));
        assert_eq!(
            tags(0.5, 3, 2.0),
            alloc::vec![ExtendedReal::Finite(1.0), ExtendedReal::Finite(2.0)]
        );
        assert_eq!(tags(2.0, 2, 5.0), alloc::vec![ExtendedReal::Finite(1.0)]);
        assert_eq!(tags(-1.0, 4, 1.0), alloc::vec![ExtendedReal::PosInfinity]);
        assert_eq!(tags(0.0, 3, 7.0), alloc::vec![ExtendedReal::Finite(3.0)]);
    }
}
