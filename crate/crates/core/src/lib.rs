//! Certified extrema of inverse-power sums under a fixed geometric mean.
//!
//! The objective is `F(x) = sum_i 1/(1+x_i)^alpha` over positive vectors
//! `(x_1, ..., x_n)` constrained to `x_1 * ... * x_n = lambda^n`. This crate
//! computes infima and suprema of `F` on that constraint set through several
//! independent routes and cross-checks them against each other:
//!
//! - [`problem`]: problem/point types, objective evaluation, degenerate
//!   boundary limits.
//! - [`closed_form`]: regime classification and exact extremum formulas with
//!   attainment witnesses.
//! - [`stationarity`]: Lagrange critical-point enumeration via the level
//!   pairing function `g`.
//! - [`oracle`]: seeded multistart descent in log-coordinates, used as a
//!   numeric cross-check and as the only route in open regimes.
//! - [`certify`]: margin checks for the scalar inequalities behind the closed
//!   forms, plus the three-variable radical-inequality certification.
//! - [`explore`]: grid scans over open regimes, emitting per-point records.
//!
//! The crate is `no_std` (with `alloc`); all IO, serialization to files and
//! the command-line front end live in the companion `extrema-cli` crate.

#![no_std]
#![allow(clippy::many_single_char_names)]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod certify;
pub mod closed_form;
pub mod explore;
mod num;
pub mod oracle;
pub mod problem;
mod rng;
mod solve;
pub mod stationarity;

pub use num::logspace;
pub use problem::{
    BoundaryDescription, Direction, EvalError, ExtendedReal, ExtremumProblem, ExtremumResult,
    FeasiblePoint, Method, ProblemError, RegimeTag,
};
