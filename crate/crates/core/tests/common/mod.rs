use extrema_core::{Direction, ExtremumProblem, FeasiblePoint};

/// Brute-force extremum estimate by exhaustive evaluation over a log-offset
/// grid, independent of every solver in the crate. Supports n = 2 (line
/// search) and n = 3 (plane search). `half_width` is in log units around
/// the symmetric point; accuracy is limited by grid resolution and by
/// truncation for non-attained extrema.
pub fn brute_extremum(
    problem: &ExtremumProblem,
    direction: Direction,
    half_width: f64,
    cells: usize,
) -> f64 {
    let n = problem.n();
    assert!(n == 2 || n == 3, "brute force supports n = 2 or 3");
    let lambda = problem.lambda();
    let offset = |i: usize| half_width * (2.0 * i as f64 / cells as f64 - 1.0);
    let mut best = f64::NAN;
    let mut consider = |coords: Vec<f64>| {
        if let Ok(point) = FeasiblePoint::new(problem, coords) {
            if let Ok(value) = problem.evaluate(&point) {
                if best.is_nan()
                    || (direction == Direction::Inf && value < best)
                    || (direction == Direction::Sup && value > best)
                {
                    best = value;
                }
            }
        }
    };
    if n == 2 {
        for i in 0..=cells {
            let v = offset(i);
            consider(vec![lambda * v.exp(), lambda * (-v).exp()]);
        }
    } else {
        for i in 0..=cells {
            for j in 0..=cells {
                let (v, w) = (offset(i), offset(j));
                consider(vec![
                    lambda * v.exp(),
                    lambda * w.exp(),
                    lambda * (-v - w).exp(),
                ]);
            }
        }
    }
    assert!(best.is_finite(), "no evaluable grid point");
    best
}
