//! Regime classification and exact extremum values with attainment
//! witnesses, where a closed form is proven; open regimes yield a one-sided
//! bound instead of a value.

use alloc::vec;

#[allow(unused_imports)] // no_std float math; shadowed when tests link std
use num_traits::Float;

use crate::num::{product_at_least_one, stable_quadratic_roots};
use crate::problem::{
    phi, BoundaryDescription, Direction, ExtendedReal, ExtremumProblem, ExtremumResult,
    FeasiblePoint, Method, RegimeTag,
};

/// Outcome of a closed-form extremum query.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtremumOutcome {
    /// The regime has a proven value.
    Known(ExtremumResult),
    /// No proven value; carries the best one-sided bound instead.
    Open(OpenRegime),
}

impl ExtremumOutcome {
    pub fn known(&self) -> Option<&ExtremumResult> {
        match self {
            ExtremumOutcome::Known(r) => Some(r),
            ExtremumOutcome::Open(_) => None,
        }
    }

    pub fn regime(&self) -> RegimeTag {
        match self {
            ExtremumOutcome::Known(r) => r.regime,
            ExtremumOutcome::Open(o) => o.regime,
        }
    }
}

/// Structured "no proven answer" outcome for open regimes.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OpenRegime {
    pub regime: RegimeTag,
    pub direction: Direction,
    /// Best candidate value: an upper bound on the infimum (best of symmetric
    /// point and boundary limits), a lower bound on the supremum.
    pub bound: f64,
}

/// Value of the objective at the symmetric point: `n / (1+lambda)^alpha`.
pub fn symmetric_objective(problem: &ExtremumProblem) -> f64 {
    problem.n() as f64 * phi(problem.alpha(), problem.lambda())
}

/// Assigns the regime tag for one direction. Total and deterministic; depends
/// only on `(alpha, n)`, never on `lambda`. The comparisons `n >= alpha + 1`
/// and `n >= 1/alpha + 1` are decided exactly on the binary values of the
/// inputs (the latter as `(n-1) * alpha >= 1` with an exact product test).
pub fn classify(problem: &ExtremumProblem, direction: Direction) -> RegimeTag {
    let alpha = problem.alpha();
    let n = problem.n();
    if alpha == 0.0 {
        return RegimeTag::SupInfAlpha0;
    }
    match direction {
        Direction::Inf => {
            if alpha < 0.0 {
                RegimeTag::InfP3
            } else if alpha <= 1.0 {
                RegimeTag::InfP1
            } else if alpha == 2.0 && n == 2 {
                RegimeTag::InfEx1
            } else if (n - 1) as f64 >= alpha {
                RegimeTag::InfP2
            } else {
                RegimeTag::InfOpen
            }
        }
        Direction::Sup => {
            if alpha < 0.0 {
                RegimeTag::SupNeg
            } else if alpha >= 1.0 {
                RegimeTag::SupP4
            } else if alpha == 0.5 && n == 2 {
                RegimeTag::SupEx2
            } else if product_at_least_one((n - 1) as f64, alpha) {
                RegimeTag::SupP5
            } else {
                RegimeTag::SupOpen
            }
        }
    }
}

/// The two closed-form branches for `INF_EX1` (`alpha = 2, n = 2`):
/// `(symmetric, asymmetric)` = `(2/(1+lambda)^2, (1-2*lambda^2)/(1-lambda^2)^2)`.
/// The symmetric branch holds for `lambda >= 1/2`; the asymmetric branch for
/// `0 < lambda <= 1/2` (its expression is only meaningful for `lambda < 1`).
/// The branches agree at `lambda = 1/2`.
pub fn inf_ex1_branches(lambda: f64) -> (f64, f64) {
    let sym = 2.0 / ((1.0 + lambda) * (1.0 + lambda));
    let l2 = lambda * lambda;
    let asym = (1.0 - 2.0 * l2) / ((1.0 - l2) * (1.0 - l2));
    (sym, asym)
}

/// The two closed-form branches for `SUP_EX2` (`alpha = 1/2, n = 2`):
/// `(symmetric, asymmetric)` = `(2/sqrt(1+lambda), lambda/sqrt(lambda^2-1))`.
/// The symmetric branch holds for `0 < lambda <= 2`; the asymmetric branch
/// for `lambda > 2` (its expression is only meaningful for `lambda > 1`).
/// The branches agree at `lambda = 2`.
pub fn sup_ex2_branches(lambda: f64) -> (f64, f64) {
    let sym = 2.0 / (1.0 + lambda).sqrt();
    let asym = lambda / (lambda * lambda - 1.0).sqrt();
    (sym, asym)
}

fn attained(regime: RegimeTag, value: f64, witness: FeasiblePoint) -> ExtremumOutcome {
    ExtremumOutcome::Known(ExtremumResult {
        value: ExtendedReal::Finite(value),
        attained: true,
        witness: Some(witness),
        boundary: None,
        regime,
        method: Method::ClosedForm,
    })
}

fn boundary_limit(
    regime: RegimeTag,
    value: ExtendedReal,
    boundary: BoundaryDescription,
) -> ExtremumOutcome {
    ExtremumOutcome::Known(ExtremumResult {
        value,
        attained: false,
        witness: None,
        boundary: Some(boundary),
        regime,
        method: Method::ClosedForm,
    })
}

/// The two-value witness `(lo, ..., lo, hi)` for `n = 2` pair regimes, built
/// from the pair's sum and product with the cancellation-free quadratic.
fn pair_witness(problem: &ExtremumProblem, sum: f64, prod: f64) -> FeasiblePoint {
    let (lo, hi) = stable_quadratic_roots(sum, prod)
        .expect("pair witness exists in its regime branch");
    FeasiblePoint::new(problem, vec![lo, hi]).expect("pair witness is feasible")
}

/// Certified infimum of the problem.
pub fn infimum(problem: &ExtremumProblem) -> ExtremumOutcome {
    let regime = classify(problem, Direction::Inf);
    let n = problem.n();
    let lambda = problem.lambda();
    match regime {
        RegimeTag::SupInfAlpha0 => attained(
            regime,
            n as f64,
            FeasiblePoint::symmetric(problem),
        ),
        RegimeTag::InfP3 => attained(
            regime,
            symmetric_objective(problem),
            FeasiblePoint::symmetric(problem),
        ),
        RegimeTag::InfP1 | RegimeTag::InfP2 => {
            let m = symmetric_objective(problem);
            if m <= 1.0 {
                attained(regime, m, FeasiblePoint::symmetric(problem))
            } else {
                boundary_limit(
                    regime,
                    ExtendedReal::Finite(1.0),
                    BoundaryDescription {
                        to_zero: 1,
                        to_infinity: n - 1,
                    },
                )
            }
        }
        RegimeTag::InfEx1 => {
            let (sym, asym) = inf_ex1_branches(lambda);
            if lambda >= 0.5 {
                attained(regime, sym, FeasiblePoint::symmetric(problem))
            } else {
                let sum = 1.0 / (lambda * lambda) - 3.0;
                let witness = pair_witness(problem, sum, lambda * lambda);
                attained(regime, asym, witness)
            }
        }
        RegimeTag::InfOpen => ExtremumOutcome::Open(OpenRegime {
            regime,
            direction: Direction::Inf,
            bound: symmetric_objective(problem).min(1.0),
        }),
        _ => unreachable!("classify(Inf) only returns infimum tags"),
    }
}

/// Certified supremum of the problem.
pub fn supremum(problem: &ExtremumProblem) -> ExtremumOutcome {
    let regime = classify(problem, Direction::Sup);
    let n = problem.n();
    let lambda = problem.lambda();
    match regime {
        RegimeTag::SupInfAlpha0 => attained(
            regime,
            n as f64,
            FeasiblePoint::symmetric(problem),
        ),
        RegimeTag::SupNeg => boundary_limit(
            regime,
            ExtendedReal::PosInfinity,
            BoundaryDescription {
                to_zero: n - 1,
                to_infinity: 1,
            },
        ),
        RegimeTag::SupP4 | RegimeTag::SupP5 => {
            let m = symmetric_objective(problem);
            if m >= (n - 1) as f64 {
                attained(regime, m, FeasiblePoint::symmetric(problem))
            } else {
                boundary_limit(
                    regime,
                    ExtendedReal::Finite((n - 1) as f64),
                    BoundaryDescription {
                        to_zero: n - 1,
                        to_infinity: 1,
                    },
                )
            }
        }
        RegimeTag::SupEx2 => {
            let (sym, asym) = sup_ex2_branches(lambda);
            if lambda > 2.0 {
                let l2 = lambda * lambda;
                let witness = pair_witness(problem, l2 * (l2 - 3.0), l2);
                attained(regime, asym, witness)
            } else {
                attained(regime, sym, FeasiblePoint::symmetric(problem))
            }
        }
        RegimeTag::SupOpen => ExtremumOutcome::Open(OpenRegime {
            regime,
            direction: Direction::Sup,
            bound: symmetric_objective(problem).max((n - 1) as f64),
        }),
        _ => unreachable!("classify(Sup) only returns supremum tags"),
    }
}

/// Dispatches on direction.
pub fn extremum(problem: &ExtremumProblem, direction: Direction) -> ExtremumOutcome {
    match direction {
        Direction::Inf => infimum(problem),
        Direction::Sup => supremum(problem),
    }
}
