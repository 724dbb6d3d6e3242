//! Command line front end over `extrema-core`: certified extrema, the
//! numeric oracle, route crosschecks, inequality certificates and grid
//! exploration, with JSON and CSV output for scripting.
//!
//! Exit codes: 0 success (and agreement where applicable), 1 a crosscheck
//! or certification came back negative, 2 usage or input errors, 3 numeric
//! failure (no converged start, or sampling that contradicts proven facts).

use std::fmt;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use extrema_core::certify::{self, ImoFinding};
use extrema_core::closed_form::{self, ExtremumOutcome};
use extrema_core::explore::{self, ScanRow, ScanSummary};
use extrema_core::oracle::{self, OracleConfig};
use extrema_core::stationarity;
use extrema_core::{
    BoundaryDescription, Direction, ExtendedReal, ExtremumProblem, RegimeTag,
};
use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
/// A crosscheck disagreed or a certification was refuted.
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
/// The numeric route failed outright.
pub const EXIT_NUMERIC: i32 = 3;

/// Fallback for the oracle start count when `--starts` is absent.
pub const STARTS_ENV: &str = "EXTREMA_ORACLE_STARTS";
const DEFAULT_STARTS: usize = 64;

#[derive(Parser, Debug)]
#[command(
    name = "extrema",
    version,
    about = "Certified extrema of sum_i (1+x_i)^(-alpha) over positive x with fixed geometric mean"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Infimum: regime, value and witness or boundary family
    Inf(ProblemArgs),
    /// Supremum: regime, value and witness or boundary family
    Sup(ProblemArgs),
    /// Interior stationary points of the constrained objective
    CriticalPoints(ProblemArgs),
    /// Seeded multistart numeric estimate of one extremum
    Oracle(OracleArgs),
    /// Closed form against the oracle, with an agreement verdict
    Crosscheck(OracleArgs),
    /// Sampling certificate, or explicit counterexample, for the bound
    /// 3/sqrt(1+lambda) on the three-variable radical sum
    CertifyImo(CertifyArgs),
    /// Scan parameter grids, one CSV row per cell
    Explore(ExploreArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ProblemArgs {
    /// Exponent alpha (any sign)
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Number of variables, at least 2
    #[arg(long)]
    pub n: usize,
    /// Geometric mean of the variables, positive
    #[arg(long)]
    pub lambda: f64,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
}

impl ProblemArgs {
    fn build(&self) -> Result<ExtremumProblem, CliError> {
        ExtremumProblem::new(self.alpha, self.n, self.lambda)
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(ValueEnum, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum DirectionArg {
    Inf,
    Sup,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Direction {
        match d {
            DirectionArg::Inf => Direction::Inf,
            DirectionArg::Sup => Direction::Sup,
        }
    }
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Which extremum to chase
    #[arg(long, value_enum)]
    pub direction: DirectionArg,
    /// Start count; beats EXTREMA_ORACLE_STARTS, which beats the default 64
    #[arg(long)]
    pub starts: Option<usize>,
    /// Base RNG seed; start k draws from stream k
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub max_iters: usize,
    /// Relative plateau tolerance for convergence
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Half-width of the log-offset clamp box; sized per problem by default
    #[arg(long)]
    pub box_radius: Option<f64>,
}

impl OracleArgs {
    fn config(&self, problem: &ExtremumProblem) -> Result<OracleConfig, CliError> {
        let box_radius = self
            .box_radius
            .unwrap_or_else(|| oracle::adequate_box_radius(problem, self.direction.into()));
        Ok(OracleConfig {
            starts: resolve_starts(self.starts)?,
            seed: self.seed,
            max_iters: self.max_iters,
            tol: self.tol,
            box_radius,
        })
    }
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    /// Parameter of the bound 3/sqrt(1+lambda); the bound holds iff lambda >= 8
    #[arg(long)]
    pub lambda: f64,
    /// Sample count for the confirmation mode
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ExploreArgs {
    /// Scan only one direction (default: both)
    #[arg(long, value_enum)]
    pub direction: Option<DirectionArg>,
    /// JSON grid spec {"alphas": [...], "ns": [...], "lambdas": [...],
    /// "directions": ["inf","sup"]?}; replaces the built-in scan
    #[arg(long)]
    pub grid_file: Option<PathBuf>,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also report per (direction, alpha, n) aggregates
    #[arg(long)]
    pub summary: bool,
    /// JSON output (rows and aggregates) instead of CSV and text
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub starts: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Fixed oracle box half-width; sized per cell by default
    #[arg(long)]
    pub box_radius: Option<f64>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Numeric(msg) | CliError::Io(msg) => {
                f.write_str(msg)
            }
        }
    }
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

fn resolve_starts(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(STARTS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Usage(format!("{STARTS_ENV} must be an integer, got {v:?}"))
        }),
        Err(_) => Ok(DEFAULT_STARTS),
    }
}

/// Parses argv and runs; returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Inf(a) => run_extremum(a, Direction::Inf),
        Command::Sup(a) => run_extremum(a, Direction::Sup),
        Command::CriticalPoints(a) => run_critical_points(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Crosscheck(a) => run_crosscheck(a),
        Command::CertifyImo(a) => run_certify(a),
        Command::Explore(a) => run_explore(a),
    }
}

/// Closed-form answer for one problem, JSON shape shared by `inf`, `sup`
/// and `crosscheck`.
#[derive(Serialize, Debug, Clone)]
pub struct ExtremumReport {
    pub alpha: f64,
    pub n: usize,
    pub lambda: f64,
    pub direction: Direction,
    pub regime: RegimeTag,
    pub open: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<ExtendedReal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attained: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BoundaryDescription>,
    /// One-sided bound, present only for open regimes: an upper bound on
    /// the infimum, a lower bound on the supremum.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
}

pub fn extremum_report(problem: &ExtremumProblem, direction: Direction) -> ExtremumReport {
    let base = |regime, open| ExtremumReport {
        alpha: problem.alpha(),
        n: problem.n(),
        lambda: problem.lambda(),
        direction,
        regime,
        open,
        value: None,
        attained: None,
        witness: None,
        boundary: None,
        bound: None,
    };
    match closed_form::extremum(problem, direction) {
        ExtremumOutcome::Known(r) => ExtremumReport {
            value: Some(r.value),
            attained: Some(r.attained),
            witness: r.witness.map(|w| w.coords().to_vec()),
            boundary: r.boundary,
            ..base(r.regime, false)
        },
        ExtremumOutcome::Open(o) => ExtremumReport {
            bound: Some(o.bound),
            ..base(o.regime, true)
        },
    }
}

fn print_extremum_text(report: &ExtremumReport) {
    let what = match report.direction {
        Direction::Inf => "infimum",
        Direction::Sup => "supremum",
    };
    println!(
        "alpha={} n={} lambda={} regime={}",
        report.alpha, report.n, report.lambda, report.regime
    );
    if report.open {
        println!("no proven closed form in this regime");
        let rel = match report.direction {
            Direction::Inf => "<=",
            Direction::Sup => ">=",
        };
        println!("best known bound: {what} {rel} {}", report.bound.unwrap());
        return;
    }
    let value = report.value.unwrap();
    match report.attained {
        Some(true) => {
            println!("{what} {value} (attained)");
            println!("witness: {:?}", report.witness.as_ref().unwrap());
        }
        _ => {
            println!("{what} {value} (limit, not attained)");
            println!("boundary family: {}", report.boundary.as_ref().unwrap());
        }
    }
}

fn run_extremum(args: ProblemArgs, direction: Direction) -> Result<i32, CliError> {
    let problem = args.build()?;
    let report = extremum_report(&problem, direction);
    if args.json {
        emit_json(&report)?;
    } else {
        print_extremum_text(&report);
    }
    Ok(EXIT_OK)
}

#[derive(Serialize, Debug)]
pub struct CriticalPointsReport {
    pub alpha: f64,
    pub n: usize,
    pub lambda: f64,
    pub points: Vec<CriticalPointReport>,
}

#[derive(Serialize, Debug)]
pub struct CriticalPointReport {
    pub coords: Vec<f64>,
    pub value: f64,
    pub multiplier: f64,
    pub small_count: usize,
}

fn run_critical_points(args: ProblemArgs) -> Result<i32, CliError> {
    let problem = args.build()?;
    let points: Vec<CriticalPointReport> = stationarity::critical_points(&problem)
        .into_iter()
        .map(|cp| CriticalPointReport {
            coords: cp.point.coords().to_vec(),
            value: cp.value,
            multiplier: cp.multiplier,
            small_count: cp.small_count,
        })
        .collect();
    let report = CriticalPointsReport {
        alpha: problem.alpha(),
        n: problem.n(),
        lambda: problem.lambda(),
        points,
    };
    if args.json {
        emit_json(&report)?;
    } else {
        println!(
            "alpha={} n={} lambda={}: {} stationary point(s)",
            report.alpha,
            report.n,
            report.lambda,
            report.points.len()
        );
        for p in &report.points {
            println!(
                "value={} multiplier={} small_count={} coords={:?}",
                p.value, p.multiplier, p.small_count, p.coords
            );
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize, Debug)]
pub struct OracleReport {
    pub alpha: f64,
    pub n: usize,
    pub lambda: f64,
    pub direction: Direction,
    pub starts: usize,
    pub seed: u64,
    pub box_radius: f64,
    pub value: f64,
    pub point: Vec<f64>,
    pub best_start: usize,
    pub converged_starts: usize,
    pub failed_starts: usize,
    pub boundary_suspect: bool,
}

fn oracle_report(
    problem: &ExtremumProblem,
    direction: Direction,
    config: &OracleConfig,
) -> Result<OracleReport, CliError> {
    let est = oracle::estimate(problem, direction, config)
        .map_err(|e| CliError::Numeric(e.to_string()))?;
    Ok(OracleReport {
        alpha: problem.alpha(),
        n: problem.n(),
        lambda: problem.lambda(),
        direction,
        starts: config.starts,
        seed: config.seed,
        box_radius: config.box_radius,
        value: est.value,
        point: est.point.coords().to_vec(),
        best_start: est.best_start,
        converged_starts: est.converged_starts,
        failed_starts: est.failed_starts,
        boundary_suspect: est.boundary_suspect,
    })
}

fn print_oracle_text(report: &OracleReport) {
    println!(
        "alpha={} n={} lambda={} direction={}",
        report.alpha, report.n, report.lambda, report.direction
    );
    println!(
        "estimate {} from start {} ({}/{} converged, {} failed)",
        report.value, report.best_start, report.converged_starts, report.starts, report.failed_starts
    );
    println!(
        "point: {:?} (box_radius={}, boundary_suspect={})",
        report.point, report.box_radius, report.boundary_suspect
    );
}

fn run_oracle(args: OracleArgs) -> Result<i32, CliError> {
    let problem = args.problem.build()?;
    let direction = args.direction.into();
    let config = args.config(&problem)?;
    let report = oracle_report(&problem, direction, &config)?;
    if args.problem.json {
        emit_json(&report)?;
    } else {
        print_oracle_text(&report);
    }
    Ok(EXIT_OK)
}

#[derive(Serialize, Debug)]
pub struct CrosscheckOut {
    pub closed: ExtremumReport,
    pub oracle: OracleReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<f64>,
    pub pass: bool,
}

fn run_crosscheck(args: OracleArgs) -> Result<i32, CliError> {
    let problem = args.problem.build()?;
    let direction = args.direction.into();
    let config = args.config(&problem)?;
    let report = oracle::crosscheck(&problem, direction, &config)
        .map_err(|e| CliError::Numeric(e.to_string()))?;
    let closed = extremum_report(&problem, direction);
    let out = CrosscheckOut {
        oracle: OracleReport {
            alpha: problem.alpha(),
            n: problem.n(),
            lambda: problem.lambda(),
            direction,
            starts: config.starts,
            seed: config.seed,
            box_radius: config.box_radius,
            value: report.estimate.value,
            point: report.estimate.point.coords().to_vec(),
            best_start: report.estimate.best_start,
            converged_starts: report.estimate.converged_starts,
            failed_starts: report.estimate.failed_starts,
            boundary_suspect: report.estimate.boundary_suspect,
        },
        closed,
        difference: report.difference,
        pass: report.pass,
    };
    if args.problem.json {
        emit_json(&out)?;
    } else {
        let closed_desc = if out.closed.open {
            format!("bound {}", out.closed.bound.unwrap())
        } else {
            format!("{}", out.closed.value.unwrap())
        };
        println!("closed ({}): {closed_desc}", out.closed.regime);
        println!(
            "oracle: {} ({} converged, boundary_suspect={})",
            out.oracle.value, out.oracle.converged_starts, out.oracle.boundary_suspect
        );
        match out.difference {
            Some(d) => println!("difference: {d:e}"),
            None => println!("difference: not comparable"),
        }
        println!("verdict: {}", if out.pass { "PASS" } else { "FAIL" });
    }
    Ok(if out.pass { EXIT_OK } else { EXIT_DISAGREE })
}

#[derive(Serialize, Debug)]
pub struct CertifyReport {
    pub lambda: f64,
    pub bound: f64,
    pub trials: usize,
    pub seed: u64,
    pub consistent: bool,
    pub finding: ImoFinding,
}

fn run_certify(args: CertifyArgs) -> Result<i32, CliError> {
    if !(args.lambda > 0.0 && args.lambda.is_finite()) {
        return Err(CliError::Usage(format!(
            "--lambda must be positive and finite, got {}",
            args.lambda
        )));
    }
    let cert = certify::certify_imo(args.lambda, args.trials, args.seed);
    let code = match &cert.finding {
        ImoFinding::Confirmed { .. } => EXIT_OK,
        ImoFinding::CounterexampleFound { .. } => EXIT_DISAGREE,
        ImoFinding::ViolationFound { .. } => EXIT_NUMERIC,
    };
    let report = CertifyReport {
        lambda: cert.lambda,
        bound: cert.bound,
        trials: args.trials,
        seed: args.seed,
        consistent: cert.consistent(),
        finding: cert.finding,
    };
    if args.json {
        emit_json(&report)?;
    } else {
        println!("bound 3/sqrt(1+lambda) = {} at lambda = {}", report.bound, report.lambda);
        match &report.finding {
            ImoFinding::Confirmed { trials, min, route_gap } => {
                println!(
                    "confirmed over {trials} samples; smallest value {} at {:?}",
                    min.value, min.point
                );
                println!("largest gap between evaluation routes: {route_gap:e}");
            }
            ImoFinding::CounterexampleFound { witness } => {
                println!(
                    "refuted: value {} < bound at {:?}",
                    witness.value, witness.point
                );
            }
            ImoFinding::ViolationFound { trials, violations, worst } => {
                println!(
                    "INTERNAL DISAGREEMENT: {violations}/{trials} samples below a proven bound; worst {} at {:?}",
                    worst.value, worst.point
                );
            }
        }
    }
    Ok(code)
}

/// Grid spec accepted by `explore --grid-file`.
#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub alphas: Vec<f64>,
    pub ns: Vec<usize>,
    pub lambdas: Vec<f64>,
    #[serde(default)]
    pub directions: Option<Vec<DirectionArg>>,
}

#[derive(Serialize, Debug)]
struct ExploreJson<'a> {
    rows: &'a [ScanRow],
    #[serde(skip_serializing_if = "Option::is_none")]
    summaries: Option<&'a [ScanSummary]>,
}

fn run_explore(args: ExploreArgs) -> Result<i32, CliError> {
    let config = OracleConfig {
        starts: resolve_starts(args.starts)?,
        seed: args.seed,
        max_iters: args.max_iters,
        tol: args.tol,
        box_radius: args.box_radius.unwrap_or(30.0),
    };
    let auto_box = args.box_radius.is_none();
    let mut rows: Vec<ScanRow> = Vec::new();
    match &args.grid_file {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            let spec: GridSpec = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("bad grid spec {}: {e}", path.display())))?;
            let directions: Vec<Direction> = match (args.direction, &spec.directions) {
                (Some(d), _) => vec![d.into()],
                (None, Some(ds)) => ds.iter().map(|&d| d.into()).collect(),
                (None, None) => vec![Direction::Inf, Direction::Sup],
            };
            for d in directions {
                rows.extend(explore::scan(
                    &spec.alphas,
                    &spec.ns,
                    &spec.lambdas,
                    d,
                    &config,
                    auto_box,
                ));
            }
        }
        None => {
            let directions = match args.direction {
                Some(d) => vec![d.into()],
                None => vec![Direction::Inf, Direction::Sup],
            };
            for d in directions {
                rows.extend(explore::default_scan(d, &config));
            }
        }
    }
    let summaries = if args.summary || args.out.is_some() {
        Some(explore::summarize(&rows))
    } else {
        None
    };

    if args.json && args.out.is_none() {
        emit_json(&ExploreJson {
            rows: &rows,
            summaries: summaries.as_deref().filter(|_| args.summary),
        })?;
    } else {
        let csv_text = rows_to_csv(&rows)?;
        match &args.out {
            Some(path) => {
                fs::write(path, csv_text)
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
                println!("wrote {} rows to {}", rows.len(), path.display());
                if args.summary {
                    let s = summaries.as_ref().unwrap();
                    if args.json {
                        emit_json(&s)?;
                    } else {
                        print_summaries(s);
                    }
                }
            }
            None => {
                print!("{csv_text}");
                if args.summary {
                    // keep stdout pure CSV for piping
                    for line in summary_lines(summaries.as_ref().unwrap()) {
                        eprintln!("{line}");
                    }
                }
            }
        }
    }
    let disagreements = rows
        .iter()
        .filter(|r| r.crosscheck_pass == Some(false))
        .count();
    Ok(if disagreements > 0 { EXIT_DISAGREE } else { EXIT_OK })
}

fn summary_lines(summaries: &[ScanSummary]) -> Vec<String> {
    let mut out = vec![
        "direction alpha n cells open failed disagreements boundary_suspects max_abs_gap"
            .to_string(),
    ];
    for s in summaries {
        out.push(format!(
            "{} {} {} {} {} {} {} {} {}",
            s.direction,
            s.alpha,
            s.n,
            s.cells,
            s.open_cells,
            s.failed_cells,
            s.agreement_failures,
            s.boundary_suspects,
            s.max_abs_gap.map_or_else(|| "-".into(), |g| format!("{g:e}")),
        ));
    }
    out
}

fn print_summaries(summaries: &[ScanSummary]) {
    for line in summary_lines(summaries) {
        println!("{line}");
    }
}

fn emit_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Io(format!("serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}

pub const CSV_HEADER: [&str; 17] = [
    "alpha",
    "n",
    "lambda",
    "direction",
    "regime",
    "is_open",
    "closed_value",
    "open_bound",
    "estimate",
    "gap",
    "crosscheck_pass",
    "boundary_suspect",
    "converged_starts",
    "failed",
    "box_radius",
    "critical_values",
    "boundary_values",
];

/// 17 significant digits; parses back to the identical f64.
fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_ext(v: &ExtendedReal) -> String {
    match v {
        ExtendedReal::Finite(x) => fmt_f(*x),
        ExtendedReal::PosInfinity => "inf".to_string(),
    }
}

fn opt_cell<T>(o: &Option<T>, f: impl Fn(&T) -> String) -> String {
    o.as_ref().map(f).unwrap_or_default()
}

pub fn csv_record(row: &ScanRow) -> Vec<String> {
    vec![
        fmt_f(row.alpha),
        row.n.to_string(),
        fmt_f(row.lambda),
        row.direction.as_str().to_string(),
        row.regime.as_str().to_string(),
        row.is_open.to_string(),
        opt_cell(&row.closed_value, fmt_ext),
        opt_cell(&row.open_bound, |v| fmt_f(*v)),
        opt_cell(&row.estimate, |v| fmt_f(*v)),
        opt_cell(&row.gap, |v| fmt_f(*v)),
        opt_cell(&row.crosscheck_pass, |b| b.to_string()),
        row.boundary_suspect.to_string(),
        row.converged_starts.to_string(),
        row.failed.to_string(),
        fmt_f(row.box_radius),
        row.critical_values
            .iter()
            .map(|&v| fmt_f(v))
            .collect::<Vec<_>>()
            .join(";"),
        row.boundary_values
            .iter()
            .map(fmt_ext)
            .collect::<Vec<_>>()
            .join(";"),
    ]
}

pub fn rows_to_csv(rows: &[ScanRow]) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(format!("csv write failed: {e}"));
    writer.write_record(CSV_HEADER).map_err(io)?;
    for row in rows {
        writer.write_record(csv_record(row)).map_err(io)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Io(format!("csv write failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(format!("csv not utf-8: {e}")))
}
