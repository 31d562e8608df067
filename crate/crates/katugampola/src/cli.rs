//! Command-line front end: `exact`, `approx`, `compare`, `solve`, `sweep`.
//!
//! Every command emits CSV on the data stream (stdout or `--out`), writes
//! diagnostics to stderr only, and exits nonzero on any error. Output is
//! deterministic: identical flags produce byte-identical bytes.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::approx::{approx_left, ApproxResult};
use crate::domain::{Grid, OperatorParams, SampledFunction};
use crate::error::Error;
use crate::exact::{exact_left_power, exact_right_power, exact_testfn_integral};
use crate::oracle::{oracle_left, QuadratureSettings};
use crate::solver::{solve_integral_equation, IntegralEquationProblem};
use crate::specfun::gamma;

/// Katugampola fractional integrals: closed forms, quadrature, series
/// approximation and an integral-equation solver. All commands emit CSV.
#[derive(Debug, Parser)]
#[command(name = "katugampola", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write CSV to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form integral of a power function at given points.
    Exact {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        /// Power exponent: x(t) = (t^rho - a^rho)^v (left) or (b^rho - t^rho)^v (right).
        #[arg(long, allow_negative_numbers = true)]
        v: f64,
        #[arg(long, value_enum)]
        side: SideArg,
        /// Evaluation points (repeatable, comma-separated accepted).
        #[arg(long = "t", required = true, num_args = 1.., value_delimiter = ',', allow_negative_numbers = true)]
        t: Vec<f64>,
    },
    /// Truncated-series approximation on a uniform grid.
    Approx {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        /// Truncation order.
        #[arg(long = "N")]
        n: usize,
        /// Number of grid points.
        #[arg(long)]
        points: usize,
        /// Integrand: power:<v>, testfn, cos, or csv:<path>.
        #[arg(long = "fn")]
        function: String,
        /// Bound on |x'|; attaches the a-priori error envelope column.
        #[arg(long = "M", allow_negative_numbers = true)]
        m: Option<f64>,
    },
    /// Approximation next to the reference value (closed form or oracle).
    Compare {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        points: usize,
        #[arg(long = "fn")]
        function: String,
        #[arg(long = "M", allow_negative_numbers = true)]
        m: Option<f64>,
        /// Use desingularized quadrature as the reference instead of a
        /// closed form (required for integrands without one).
        #[arg(long)]
        oracle: bool,
    },
    /// Solve I x + x = f on [0, b] with x(0) = 0.
    Solve {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        points: usize,
        /// Right-hand side: paper (solution t^(2 rho)), zero, or power:<m>
        /// (manufactured solution t^(rho m)).
        #[arg(long)]
        rhs: String,
    },
    /// Run a convergence sweep described by a key=value config file.
    Sweep {
        /// Stanza-per-case config; see the README for the format.
        config: PathBuf,
    },
}

/// One row of a convergence experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub case_id: String,
    pub alpha: f64,
    pub rho: f64,
    pub n: usize,
    pub t: f64,
    pub exact: Option<f64>,
    pub approx: f64,
    pub abs_err: Option<f64>,
    pub envelope: Option<f64>,
}

/// CLI-level error: core numerics, I/O, config parsing or usage.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(io::Error),
    Config { line: usize, message: String },
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Config { line, message } => write!(f, "config line {line}: {message}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Runs a parsed invocation, writing CSV to `--out` or stdout.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => {
            let mut file = io::BufWriter::new(fs::File::create(path)?);
            run_command(&cli.command, &mut file)?;
            file.flush()?;
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            run_command(&cli.command, &mut lock)?;
            lock.flush()?;
            Ok(())
        }
    }
}

/// Executes one subcommand against an arbitrary writer.
pub fn run_command(cmd: &Command, w: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Exact {
            alpha,
            rho,
            a,
            b,
            v,
            side,
            t,
        } => cmd_exact(*alpha, *rho, *a, *b, *v, *side, t, w),
        Command::Approx {
            alpha,
            rho,
            a,
            b,
            n,
            points,
            function,
            m,
        } => cmd_approx(*alpha, *rho, *a, *b, *n, *points, function, *m, w),
        Command::Compare {
            alpha,
            rho,
            a,
            b,
            n,
            points,
            function,
            m,
            oracle,
        } => cmd_compare(*alpha, *rho, *a, *b, *n, *points, function, *m, *oracle, w),
        Command::Solve {
            alpha,
            rho,
            b,
            n,
            points,
            rhs,
        } => cmd_solve(*alpha, *rho, *b, *n, *points, rhs, w),
        Command::Sweep { config } => cmd_sweep(config, w),
    }
}

/// Shortest round-trip decimal rendering; lossless for f64 and stable
/// across runs, which is what the byte-determinism contract needs.
fn fmt_f(v: f64) -> String {
    format!("{v}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f).unwrap_or_default()
}

#[allow(clippy::too_many_arguments)]
fn cmd_exact(
    alpha: f64,
    rho: f64,
    a: f64,
    b: f64,
    v: f64,
    side: SideArg,
    ts: &[f64],
    w: &mut dyn Write,
) -> Result<(), CliError> {
    let params = OperatorParams::new(alpha, rho, a, b)?;
    writeln!(w, "t,value")?;
    for &t in ts {
        let value = match side {
            SideArg::Left => exact_left_power(&params, v, t)?,
            SideArg::Right => exact_right_power(&params, v, t)?,
        };
        writeln!(w, "{},{}", fmt_f(t), fmt_f(value))?;
    }
    Ok(())
}

/// Built-in integrand specifications.
enum FnSpec {
    Power(f64),
    TestFn,
    Cos,
    Csv(PathBuf),
}

impl FnSpec {
    fn parse(s: &str) -> Result<Self, CliError> {
        if s == "testfn" {
            Ok(FnSpec::TestFn)
        } else if s == "cos" {
            Ok(FnSpec::Cos)
        } else if let Some(v) = s.strip_prefix("power:") {
            let v: f64 = v
                .parse()
                .map_err(|_| CliError::Usage(format!("bad exponent in function spec '{s}'")))?;
            Ok(FnSpec::Power(v))
        } else if let Some(path) = s.strip_prefix("csv:") {
            Ok(FnSpec::Csv(PathBuf::from(path)))
        } else {
            Err(CliError::Usage(format!(
                "unknown function spec '{s}' (expected power:<v>, testfn, cos or csv:<path>)"
            )))
        }
    }

    /// Samples the integrand on the grid.
    fn sample(&self, params: &OperatorParams, grid: &Grid) -> Result<SampledFunction, CliError> {
        let rho = params.rho();
        let a_rho = params.a().powf(rho);
        match self {
            FnSpec::Power(v) => {
                let v = *v;
                Ok(SampledFunction::from_fn(grid.clone(), |t| {
                    (t.powf(rho) - a_rho).powf(v)
                }))
            }
            FnSpec::TestFn => Ok(SampledFunction::from_fn(grid.clone(), |t| {
                t.powf(2.0 * rho)
            })),
            FnSpec::Cos => Ok(SampledFunction::from_fn(grid.clone(), |t| t.cos())),
            FnSpec::Csv(path) => read_sampled_csv(path, grid),
        }
    }

    /// Closed-form reference for the left integral, when one exists.
    fn closed_form(&self, params: &OperatorParams, t: f64) -> Option<Result<f64, Error>> {
        match self {
            FnSpec::Power(v) => Some(exact_left_power(params, *v, t)),
            FnSpec::TestFn => Some(exact_testfn_integral(params, t)),
            FnSpec::Cos | FnSpec::Csv(_) => None,
        }
    }

    /// The integrand as a callable, for oracle references. Sampled data has
    /// no callable; the oracle lifts it by interpolation instead.
    fn callable(&self, params: &OperatorParams) -> Option<Box<dyn Fn(f64) -> f64>> {
        let rho = params.rho();
        let a_rho = params.a().powf(rho);
        match self {
            FnSpec::Power(v) => {
                let v = *v;
                Some(Box::new(move |t: f64| (t.powf(rho) - a_rho).powf(v)))
            }
            FnSpec::TestFn => Some(Box::new(move |t: f64| t.powf(2.0 * rho))),
            FnSpec::Cos => Some(Box::new(|t: f64| t.cos())),
            FnSpec::Csv(_) => None,
        }
    }
}

/// Reads `t,value` rows (optional header) and checks they sit on `grid`.
fn read_sampled_csv(path: &Path, grid: &Grid) -> Result<SampledFunction, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut ts = Vec::new();
    let mut ys = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.splitn(2, ',');
        let t_str = parts.next().unwrap_or("").trim();
        let y_str = parts.next().unwrap_or("").trim();
        if idx == 0 && t_str.parse::<f64>().is_err() {
            continue; // header row
        }
        let t: f64 = t_str.parse().map_err(|_| CliError::Usage(format!(
            "{}:{}: malformed t value '{t_str}'",
            path.display(),
            idx + 1
        )))?;
        let y: f64 = y_str.parse().map_err(|_| CliError::Usage(format!(
            "{}:{}: malformed sample value '{y_str}'",
            path.display(),
            idx + 1
        )))?;
        ts.push(t);
        ys.push(y);
    }
    if ts.len() != grid.len() {
        return Err(CliError::Usage(format!(
            "{}: {} samples for a {}-point grid",
            path.display(),
            ts.len(),
            grid.len()
        )));
    }
    let tol = 1e-9 * (grid.end() - grid.start());
    for (have, want) in ts.iter().zip(grid.points()) {
        if (have - want).abs() > tol {
            return Err(CliError::Usage(format!(
                "{}: sample abscissa {have} does not match grid point {want}",
                path.display()
            )));
        }
    }
    Ok(SampledFunction::new(grid.clone(), ys)?)
}

struct ApproxSetup {
    params: OperatorParams,
    spec: FnSpec,
    samples: SampledFunction,
    result: ApproxResult,
}

#[allow(clippy::too_many_arguments)]
fn approx_setup(
    alpha: f64,
    rho: f64,
    a: f64,
    b: f64,
    n: usize,
    points: usize,
    function: &str,
    m: Option<f64>,
) -> Result<ApproxSetup, CliError> {
    let params = OperatorParams::new(alpha, rho, a, b)?;
    let spec = FnSpec::parse(function)?;
    let grid = Grid::uniform(a, b, points)?;
    let samples = spec.sample(&params, &grid)?;
    let result = approx_left(&params, &samples, n, m)?;
    Ok(ApproxSetup {
        params,
        spec,
        samples,
        result,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_approx(
    alpha: f64,
    rho: f64,
    a: f64,
    b: f64,
    n: usize,
    points: usize,
    function: &str,
    m: Option<f64>,
    w: &mut dyn Write,
) -> Result<(), CliError> {
    let setup = approx_setup(alpha, rho, a, b, n, points, function, m)?;
    let res = &setup.result;
    if res.error_envelope().is_some() {
        writeln!(w, "t,approx,envelope")?;
    } else {
        writeln!(w, "t,approx")?;
    }
    for (i, &t) in res.grid().points().iter().enumerate() {
        match res.error_envelope() {
            Some(env) => writeln!(
                w,
                "{},{},{}",
                fmt_f(t),
                fmt_f(res.values()[i]),
                fmt_f(env[i])
            )?,
            None => writeln!(w, "{},{}", fmt_f(t), fmt_f(res.values()[i]))?,
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_compare(
    alpha: f64,
    rho: f64,
    a: f64,
    b: f64,
    n: usize,
    points: usize,
    function: &str,
    m: Option<f64>,
    use_oracle: bool,
    w: &mut dyn Write,
) -> Result<(), CliError> {
    let setup = approx_setup(alpha, rho, a, b, n, points, function, m)?;
    let params = &setup.params;
    let res = &setup.result;
    let settings = QuadratureSettings::default();

    let reference: Vec<f64> = if use_oracle {
        let pts = res.grid().points();
        match setup.spec.callable(params) {
            Some(f) => pts
                .iter()
                .map(|&t| oracle_left(params, &*f, t, &settings))
                .collect::<Result<_, _>>()?,
            None => pts
                .iter()
                .map(|&t| {
                    crate::oracle::oracle_left_sampled(params, &setup.samples, t, &settings)
                })
                .collect::<Result<_, _>>()?,
        }
    } else {
        res.grid()
            .points()
            .iter()
            .map(|&t| {
                setup.spec.closed_form(params, t).ok_or_else(|| {
                    CliError::Usage(format!(
                        "function spec '{function}' has no closed form; pass --oracle"
                    ))
                })?
                .map_err(CliError::from)
            })
            .collect::<Result<_, _>>()?
    };

    writeln!(w, "t,exact,approx,abs_err,envelope")?;
    for (i, &t) in res.grid().points().iter().enumerate() {
        let approx = res.values()[i];
        let exact = reference[i];
        let env = res.error_envelope().map(|e| e[i]);
        writeln!(
            w,
            "{},{},{},{},{}",
            fmt_f(t),
            fmt_f(exact),
            fmt_f(approx),
            fmt_f((approx - exact).abs()),
            fmt_opt(env)
        )?;
    }
    Ok(())
}

/// Right-hand sides for `solve`, each with its known solution.
fn parse_rhs(
    spec: &str,
    params: &OperatorParams,
) -> Result<(Box<dyn Fn(f64) -> f64>, Box<dyn Fn(f64) -> f64>), CliError> {
    let (alpha, rho) = (params.alpha(), params.rho());
    if spec == "zero" {
        return Ok((Box::new(|_| 0.0), Box::new(|_| 0.0)));
    }
    if spec == "paper" {
        let coeff = 2.0 * rho.powf(-alpha) / gamma(alpha + 3.0)?;
        let f = move |t: f64| t.powf(2.0 * rho) + coeff * t.powf(rho * (alpha + 2.0));
        let x = move |t: f64| t.powf(2.0 * rho);
        return Ok((Box::new(f), Box::new(x)));
    }
    if let Some(mexp) = spec.strip_prefix("power:") {
        let mexp: f64 = mexp
            .parse()
            .map_err(|_| CliError::Usage(format!("bad exponent in rhs spec '{spec}'")))?;
        if mexp <= 0.0 {
            return Err(CliError::Usage(
                "rhs power exponent must be positive (solution x(t) = t^(rho m) with x(0) = 0)"
                    .into(),
            ));
        }
        let coeff = rho.powf(-alpha) * gamma(mexp + 1.0)? / gamma(alpha + mexp + 1.0)?;
        let f = move |t: f64| t.powf(rho * mexp) + coeff * t.powf(rho * (alpha + mexp));
        let x = move |t: f64| t.powf(rho * mexp);
        return Ok((Box::new(f), Box::new(x)));
    }
    Err(CliError::Usage(format!(
        "unknown rhs spec '{spec}' (expected paper, zero or power:<m>)"
    )))
}

fn cmd_solve(
    alpha: f64,
    rho: f64,
    b: f64,
    n: usize,
    points: usize,
    rhs: &str,
    w: &mut dyn Write,
) -> Result<(), CliError> {
    let params = OperatorParams::new(alpha, rho, 0.0, b)?;
    let (f, known) = parse_rhs(rhs, &params)?;
    let problem = IntegralEquationProblem::new(params, &*f, 0.0)?;
    let grid = Grid::uniform(0.0, b, points)?;
    let sol = solve_integral_equation(&problem, &grid, n)?;
    writeln!(w, "t,x,exact")?;
    for (i, &t) in grid.points().iter().enumerate() {
        writeln!(w, "{},{},{}", fmt_f(t), fmt_f(sol.x()[i]), fmt_f(known(t)))?;
    }
    Ok(())
}

/// One stanza of a sweep config.
#[derive(Debug, Clone)]
struct SweepCase {
    id: String,
    params: OperatorParams,
    orders: Vec<usize>,
    points: usize,
    function: String,
    m: Option<f64>,
}

/// Parses the blank-line-separated `key = value` stanza format. `#` starts
/// a comment; every error carries the offending line number.
fn parse_sweep_config(text: &str) -> Result<Vec<SweepCase>, CliError> {
    struct RawCase {
        first_line: usize,
        id: Option<String>,
        alpha: Option<f64>,
        rho: Option<f64>,
        a: f64,
        b: f64,
        points: Option<usize>,
        orders: Option<Vec<usize>>,
        function: Option<String>,
        m: Option<f64>,
    }

    let mut raws: Vec<RawCase> = Vec::new();
    let mut current: Option<RawCase> = None;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            if let Some(c) = current.take() {
                raws.push(c);
            }
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| CliError::Config {
            line: line_no,
            message: format!("expected key = value, got '{line}'"),
        })?;
        let key = key.trim();
        let value = value.trim();
        let case = current.get_or_insert_with(|| RawCase {
            first_line: line_no,
            id: None,
            alpha: None,
            rho: None,
            a: 0.0,
            b: 0.5,
            points: None,
            orders: None,
            function: None,
            m: None,
        });
        let parse_f64 = |v: &str| -> Result<f64, CliError> {
            v.parse().map_err(|_| CliError::Config {
                line: line_no,
                message: format!("bad number '{v}' for key '{key}'"),
            })
        };
        match key {
            "case" => case.id = Some(value.to_string()),
            "alpha" => case.alpha = Some(parse_f64(value)?),
            "rho" => case.rho = Some(parse_f64(value)?),
            "a" => case.a = parse_f64(value)?,
            "b" => case.b = parse_f64(value)?,
            "M" => case.m = Some(parse_f64(value)?),
            "points" => {
                case.points = Some(value.parse().map_err(|_| CliError::Config {
                    line: line_no,
                    message: format!("bad point count '{value}'"),
                })?)
            }
            "N" => {
                let orders = value
                    .split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| CliError::Config {
                        line: line_no,
                        message: format!("bad N list '{value}'"),
                    })?;
                case.orders = Some(orders);
            }
            "fn" => case.function = Some(value.to_string()),
            other => {
                return Err(CliError::Config {
                    line: line_no,
                    message: format!("unknown key '{other}'"),
                })
            }
        }
    }
    if let Some(c) = current.take() {
        raws.push(c);
    }

    let mut cases = Vec::new();
    for (i, raw) in raws.into_iter().enumerate() {
        let id = raw.id.unwrap_or_else(|| format!("case{}", i + 1));
        let line = raw.first_line;
        let missing = |what: &str| CliError::Config {
            line,
            message: format!("case '{id}': missing required key '{what}'"),
        };
        let alpha = raw.alpha.ok_or_else(|| missing("alpha"))?;
        let rho = raw.rho.ok_or_else(|| missing("rho"))?;
        let points = raw.points.ok_or_else(|| missing("points"))?;
        let orders = raw.orders.ok_or_else(|| missing("N"))?;
        let function = raw.function.ok_or_else(|| missing("fn"))?;
        let params = OperatorParams::new(alpha, rho, raw.a, raw.b).map_err(|e| {
            CliError::Config {
                line,
                message: format!("case '{id}': {e}"),
            }
        })?;
        FnSpec::parse(&function)?;
        cases.push(SweepCase {
            id,
            params,
            orders,
            points,
            function,
            m: raw.m,
        });
    }
    Ok(cases)
}

fn cmd_sweep(config: &Path, w: &mut dyn Write) -> Result<(), CliError> {
    let text = fs::read_to_string(config)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", config.display())))?;
    let cases = parse_sweep_config(&text)?;
    writeln!(w, "case_id,alpha,rho,N,t,exact,approx,abs_err,envelope")?;
    let mut summary = String::from("sweep summary:");
    for case in &cases {
        let records = run_sweep_case(case)?;
        let mut worst: Option<f64> = None;
        for r in &records {
            if let Some(e) = r.abs_err {
                worst = Some(worst.map_or(e, |w: f64| w.max(e)));
            }
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{}",
                r.case_id,
                fmt_f(r.alpha),
                fmt_f(r.rho),
                r.n,
                fmt_f(r.t),
                fmt_opt(r.exact),
                fmt_f(r.approx),
                fmt_opt(r.abs_err),
                fmt_opt(r.envelope)
            )?;
        }
        match worst {
            Some(e) => summary.push_str(&format!(" {}={}", case.id, fmt_f(e))),
            None => summary.push_str(&format!(" {}=n/a", case.id)),
        }
    }
    eprintln!("{summary}");
    Ok(())
}

fn run_sweep_case(case: &SweepCase) -> Result<Vec<SweepRecord>, CliError> {
    let params = &case.params;
    let spec = FnSpec::parse(&case.function)?;
    let grid = Grid::uniform(params.a(), params.b(), case.points)?;
    let samples = spec.sample(params, &grid)?;
    let mut records = Vec::new();
    for &n in &case.orders {
        let res = approx_left(params, &samples, n, case.m)?;
        for (i, &t) in grid.points().iter().enumerate() {
            let exact = match spec.closed_form(params, t) {
                Some(v) => Some(v?),
                None => None,
            };
            let approx = res.values()[i];
            records.push(SweepRecord {
                case_id: case.id.clone(),
                alpha: params.alpha(),
                rho: params.rho(),
                n,
                t,
                exact,
                approx,
                abs_err: exact.map(|e| (approx - e).abs()),
                envelope: res.error_envelope().map(|env| env[i]),
            });
        }
    }
    Ok(records)
}
