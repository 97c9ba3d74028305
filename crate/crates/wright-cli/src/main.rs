//! Command-line interface for the Wright-function library: point
//! evaluation, coefficient dumps, regeneration of the published reference
//! tables with side-by-side ratios, and profile-grid CSV emission for the
//! σ → 1 limit figures.
//!
//! Exit codes are stable for scripting: 0 success, 2 domain error,
//! 3 numerical (convergence / Stokes) error, 64 usage error.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::Float;

use wright::coeffs::{c_algorithm, c_closed, coefficients, CoeffMethod, CoefficientTable};
use wright::core::{classify_regime, Real};
use wright::error::WrightError;
use wright::prec::{bits, log10_exact};
use wright::series::{achieved_digits, f_series, m_closed, m_series};
use wright::{
    f_neg_asympt, f_pos_asympt, figure_grid, m_neg_asympt, m_pos_asympt, GridMethod, NegOpts,
    Side, Truncation,
};

const EXIT_DOMAIN: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_USAGE: u8 = 64;

/// |x| at or below which `--method auto` prefers the Maclaurin series.
const AUTO_SERIES_LIMIT: f64 = 20.0;

/// Default exponential-series truncation for positive-axis evaluation.
const DEFAULT_POS_TERMS: usize = 7;

#[derive(Parser)]
#[command(
    name = "wright",
    version,
    about = "Wright functions of the second kind: series, asymptotic expansions, and the sigma -> 1 limit",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate M_sigma(x) or F_sigma(x) at a single point
    Eval(EvalArgs),
    /// Dump the asymptotic coefficient table c_j(sigma) as rows j, c_j, method
    Coeffs(CoeffsArgs),
    /// Regenerate the published coefficient table at sigma = 1/4 and 3/4 (10 dp, both methods)
    Table1(OutArgs),
    /// Regenerate the published positive-axis truncation-error table
    Table2(OutArgs),
    /// Regenerate the published negative-axis error table
    Table3(OutArgs),
    /// Emit a profile grid of M_{1-eps}(+-x) as CSV/table rows
    Figure(FigureArgs),
    /// Evaluate one point by every applicable method, side by side
    Compare(CompareArgs),
}

#[derive(Args, Clone)]
struct OutArgs {
    /// Significant digits for numeric cells
    #[arg(long, default_value_t = 16)]
    digits: u32,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output to PATH instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FnKind {
    /// M_sigma (the mapping kernel W_{-sigma,1-sigma}(-x))
    #[value(name = "M", alias = "m")]
    M,
    /// F_sigma = sigma * x * M_sigma (W_{-sigma,0}(-x))
    #[value(name = "F", alias = "f")]
    F,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Closed form if available, else series for small |x|, else asymptotics
    Auto,
    /// Maclaurin series with precision escalation
    Series,
    /// Large-|x| asymptotic expansion (sigma = 1/2 is routed to the closed form)
    Asympt,
    /// Exact closed form (sigma in {1/3, 1/2} only)
    Closed,
}

#[derive(Args)]
struct EvalArgs {
    /// Which function to evaluate
    #[arg(long = "fn", value_enum, default_value_t = FnKind::M)]
    func: FnKind,
    /// sigma in (0,1), as an exact rational "p/q" or a decimal
    #[arg(long)]
    sigma: String,
    /// Argument x (sign selects the axis)
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    /// Evaluation method
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    /// Exponential-series truncation for the positive-axis expansion
    #[arg(long, default_value_t = DEFAULT_POS_TERMS)]
    terms: usize,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoeffsMethodArg {
    /// Closed form through j = 6, algorithmic beyond
    Auto,
    /// Fixed polynomial table (j <= 6)
    Closed,
    /// Inverse-factorial expansion algorithm (any order)
    Algorithm,
}

#[derive(Args)]
struct CoeffsArgs {
    /// sigma in (0,1), as an exact rational "p/q" or a decimal
    #[arg(long)]
    sigma: String,
    /// Number of coefficients c_0 .. c_{terms-1}
    #[arg(long, default_value_t = 7)]
    terms: usize,
    /// Coefficient construction
    #[arg(long, value_enum, default_value_t = CoeffsMethodArg::Auto)]
    method: CoeffsMethodArg,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Pos,
    Neg,
}

#[derive(Args)]
struct FigureArgs {
    /// epsilon = 1 - sigma, in (0,1)
    #[arg(long)]
    eps: f64,
    /// Axis side: M_{1-eps}(+x) or M_{1-eps}(-x)
    #[arg(long, value_enum, default_value_t = SideArg::Pos)]
    side: SideArg,
    /// Comma-separated evaluators: limit,kp,series
    #[arg(long, default_value = "limit")]
    methods: String,
    /// Grid start (default 0.5 on the positive side, 4 on the negative)
    #[arg(long)]
    x_min: Option<f64>,
    /// Grid end (default 2 on the positive side, 12 on the negative)
    #[arg(long)]
    x_max: Option<f64>,
    /// Number of grid points (>= 2)
    #[arg(long, default_value_t = 101)]
    n: usize,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct CompareArgs {
    /// Which function to evaluate
    #[arg(long = "fn", value_enum, default_value_t = FnKind::M)]
    func: FnKind,
    /// sigma in (0,1), as an exact rational "p/q" or a decimal
    #[arg(long)]
    sigma: String,
    /// Argument x (sign selects the axis)
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    /// Exponential-series truncation for the positive-axis expansion
    #[arg(long, default_value_t = DEFAULT_POS_TERMS)]
    terms: usize,
    #[command(flatten)]
    out: OutArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let outcome = match cli.command {
        Cmd::Eval(a) => cmd_eval(&a),
        Cmd::Coeffs(a) => cmd_coeffs(&a),
        Cmd::Table1(a) => cmd_table1(&a),
        Cmd::Table2(a) => cmd_table2(&a),
        Cmd::Table3(a) => cmd_table3(&a),
        Cmd::Figure(a) => cmd_figure(&a),
        Cmd::Compare(a) => cmd_compare(&a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }
    fn domain(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_DOMAIN,
            message: msg.into(),
        }
    }
}

impl From<WrightError> for CliError {
    fn from(e: WrightError) -> Self {
        let code = match &e {
            WrightError::Domain(_) | WrightError::Range(_) => EXIT_DOMAIN,
            _ => EXIT_NUMERICAL,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError {
            code: EXIT_DOMAIN,
            message: format!("i/o: {e}"),
        }
    }
}

fn parse_sigma(s: &str) -> Result<Real, CliError> {
    let sigma =
        Real::parse(s).map_err(|e| CliError::usage(format!("cannot parse sigma {s:?}: {e}")))?;
    let v = sigma.to_f64();
    if !(v > 0.0 && v < 1.0) {
        return Err(CliError::domain("sigma must lie in (0,1)"));
    }
    Ok(sigma)
}

// ---------------------------------------------------------------------------
// output plumbing
// ---------------------------------------------------------------------------

struct Sheet {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Sheet {
    fn new(header: &[&str]) -> Self {
        Sheet {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn emit(&self, args: &OutArgs) -> Result<(), CliError> {
        let mut sink: Box<dyn Write> = match &args.out {
            Some(path) => Box::new(File::create(path)?),
            None => Box::new(io::stdout().lock()),
        };
        match args.format {
            Format::Csv => {
                write!(sink, "{}\n", self.header.join(","))?;
                for row in &self.rows {
                    write!(sink, "{}\n", row.join(","))?;
                }
            }
            Format::Table => {
                let ncol = self.header.len();
                let mut width = vec![0usize; ncol];
                for (i, h) in self.header.iter().enumerate() {
                    width[i] = h.len();
                }
                for row in &self.rows {
                    for (i, cell) in row.iter().enumerate() {
                        width[i] = width[i].max(cell.len());
                    }
                }
                let line = |cells: &[String], sink: &mut Box<dyn Write>| -> io::Result<()> {
                    let mut parts = Vec::with_capacity(ncol);
                    for (i, cell) in cells.iter().enumerate() {
                        parts.push(format!("{:<w$}", cell, w = width[i]));
                    }
                    write!(sink, "{}\n", parts.join("  ").trim_end())
                };
                line(&self.header, &mut sink)?;
                for row in &self.rows {
                    line(row, &mut sink)?;
                }
            }
        }
        sink.flush()?;
        Ok(())
    }
}

/// Format with `digits` significant digits: plain decimal for magnitudes in
/// [1e-4, 1e6), scientific otherwise. No locale dependence: '.' only.
fn fmt_float(v: &Float, digits: u32) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_zero() {
        return "0".into();
    }
    if v.is_infinite() {
        return if *v < 0u32 { "-inf".into() } else { "inf".into() };
    }
    // rug's `{:.P e}` prints P significant digits (P = 0 would mean full
    // precision, so clamp away from it).
    let d = digits.max(1) as usize;
    let sci = format!("{:.*e}", d, v);
    let mag = log10_exact(v);
    if (-4.0..6.0).contains(&mag) {
        sci_to_plain(&sci)
    } else {
        sci
    }
}

/// Expand "±m.mmm…e±k" into plain positional notation (exact digit shift).
fn sci_to_plain(sci: &str) -> String {
    let (mant, exp) = sci.split_once(['e', 'E']).expect("scientific form");
    let k: i64 = exp.parse().expect("integer exponent");
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches(['-', '+']);
    let digits: String = mant.chars().filter(|c| *c != '.').collect();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if k >= 0 {
        let point = k as usize + 1;
        if point >= digits.len() {
            out.push_str(&digits);
            out.extend(std::iter::repeat('0').take(point - digits.len()));
        } else {
            out.push_str(&digits[..point]);
            out.push('.');
            out.push_str(&digits[point..]);
        }
    } else {
        out.push_str("0.");
        out.extend(std::iter::repeat('0').take((-k - 1) as usize));
        out.push_str(&digits);
    }
    out
}

fn fmt_f64(v: f64, digits: u32) -> String {
    fmt_float(&Float::with_val(64, v), digits)
}

/// Fixed 6-decimal format for grid abscissas and log columns.
fn fmt_axis(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v < 0.0 { "-inf".into() } else { "inf".into() }
    } else {
        format!("{v:.6}")
    }
}

fn sanitize(msg: &str) -> String {
    msg.replace(',', ";")
}

// ---------------------------------------------------------------------------
// eval / compare
// ---------------------------------------------------------------------------

struct EvalOutcome {
    value: Float,
    method: String,
    /// Absolute error estimate: first omitted asymptotic term, or the
    /// rounding floor of the series, or exactly 0 for closed forms.
    proxy: Float,
}

fn closed_form(func: FnKind, sigma: &Real, x: f64, digits: u32) -> Option<EvalOutcome> {
    let xf = Float::with_val(bits(digits + 10), x);
    let m = m_closed(sigma, &xf)?;
    let value = match func {
        FnKind::M => m,
        FnKind::F => Float::with_val(m.prec(), &m * &xf) * Float::with_val(m.prec(), sigma.to_f64()),
    };
    Some(EvalOutcome {
        value,
        method: "closed-form (exact)".into(),
        proxy: Float::with_val(32, 0),
    })
}

fn eval_series(func: FnKind, sigma: &Real, x: f64, digits: u32) -> Result<EvalOutcome, CliError> {
    let pv = match func {
        FnKind::M => m_series(sigma, x, digits)?,
        FnKind::F => f_series(sigma, x, digits)?,
    };
    let ach = achieved_digits(&pv);
    let mut proxy = pv.value.clone().abs();
    proxy *= Float::with_val(64, -ach * std::f64::consts::LN_10).exp();
    Ok(EvalOutcome {
        value: pv.value,
        method: format!("series ({} terms)", pv.terms_used),
        proxy,
    })
}

fn eval_asympt(
    func: FnKind,
    sigma: &Real,
    x: f64,
    terms: usize,
    digits: u32,
) -> Result<EvalOutcome, CliError> {
    if sigma.eq_ratio(1, 2) {
        // Stokes-line case: the expansion machinery hands this to the
        // exact closed form M_{1/2}(x) = exp(-x^2/4)/sqrt(pi).
        let mut out = closed_form(func, sigma, x, digits)
            .expect("closed form exists at sigma = 1/2");
        out.method = "closed-form (exact; sigma = 1/2)".into();
        return Ok(out);
    }
    let r = if x >= 0.0 {
        match func {
            FnKind::M => m_pos_asympt(sigma, x, terms)?,
            FnKind::F => f_pos_asympt(sigma, x, terms)?,
        }
    } else {
        match func {
            FnKind::M => m_neg_asympt(sigma, -x, NegOpts::default())?,
            FnKind::F => f_neg_asympt(sigma, -x, NegOpts::default())?,
        }
    };
    let mut label = format!(
        "asympt (exp {} terms; alg {} terms)",
        r.exp_terms_used, r.alg_terms_used
    );
    if r.accuracy_warning {
        label.push_str(" [truncation past optimal]");
    }
    Ok(EvalOutcome {
        value: r.value,
        method: label,
        proxy: r.last_term_magnitude,
    })
}

fn eval_dispatch(
    method: Method,
    func: FnKind,
    sigma: &Real,
    x: f64,
    terms: usize,
    digits: u32,
) -> Result<EvalOutcome, CliError> {
    match method {
        Method::Closed => closed_form(func, sigma, x, digits).ok_or_else(|| {
            CliError::domain("no closed form at this sigma (available: 1/3, 1/2)")
        }),
        Method::Series => eval_series(func, sigma, x, digits),
        Method::Asympt => eval_asympt(func, sigma, x, terms, digits),
        Method::Auto => {
            if let Some(out) = closed_form(func, sigma, x, digits) {
                Ok(out)
            } else if x.abs() <= AUTO_SERIES_LIMIT {
                eval_series(func, sigma, x, digits)
            } else {
                eval_asympt(func, sigma, x, terms, digits)
            }
        }
    }
}

fn fn_name(func: FnKind) -> &'static str {
    match func {
        FnKind::M => "M",
        FnKind::F => "F",
    }
}

fn cmd_eval(a: &EvalArgs) -> Result<(), CliError> {
    let sigma = parse_sigma(&a.sigma)?;
    if !a.x.is_finite() {
        return Err(CliError::domain("x must be finite"));
    }
    let regime = classify_regime(&sigma)?;
    let out = eval_dispatch(a.method, a.func, &sigma, a.x, a.terms, a.out.digits)?;
    let mut sheet = Sheet::new(&["fn", "sigma", "x", "value", "method", "error_proxy", "regime"]);
    sheet.push(vec![
        fn_name(a.func).into(),
        a.sigma.clone(),
        fmt_f64(a.x, a.out.digits.min(17)),
        fmt_float(&out.value, a.out.digits),
        out.method,
        fmt_float(&out.proxy, 3),
        format!("{regime:?}"),
    ]);
    sheet.emit(&a.out)
}

fn cmd_compare(a: &CompareArgs) -> Result<(), CliError> {
    let sigma = parse_sigma(&a.sigma)?;
    if !a.x.is_finite() {
        return Err(CliError::domain("x must be finite"));
    }
    let digits = a.out.digits;
    let mut attempts: Vec<(String, Result<EvalOutcome, CliError>)> = Vec::new();
    attempts.push((
        "series".into(),
        eval_series(a.func, &sigma, a.x, digits),
    ));
    attempts.push((
        "asympt".into(),
        eval_asympt(a.func, &sigma, a.x, a.terms, digits),
    ));
    if let Some(c) = closed_form(a.func, &sigma, a.x, digits) {
        attempts.push(("closed".into(), Ok(c)));
    }
    let reference: Option<Float> = attempts
        .iter()
        .find_map(|(_, r)| r.as_ref().ok().map(|o| o.value.clone()));
    let mut sheet = Sheet::new(&["method", "value", "rel_diff_vs_first_ok", "detail"]);
    let mut first_err: Option<&CliError> = None;
    let mut any_ok = false;
    for (name, res) in &attempts {
        match res {
            Ok(o) => {
                any_ok = true;
                let rel = reference.as_ref().map(|r| {
                    let wp = o.value.prec().max(r.prec());
                    let d = Float::with_val(wp, &o.value - r).abs();
                    let scale = r.clone().abs().max(&Float::with_val(wp, 1e-300));
                    Float::with_val(wp, &d / &scale)
                });
                sheet.push(vec![
                    name.clone(),
                    fmt_float(&o.value, digits),
                    rel.map(|r| fmt_float(&r, 3)).unwrap_or_else(|| "-".into()),
                    o.method.clone(),
                ]);
            }
            Err(e) => {
                if first_err.is_none() {
                    first_err = Some(e);
                }
                sheet.push(vec![
                    name.clone(),
                    "error".into(),
                    "-".into(),
                    sanitize(&e.message),
                ]);
            }
        }
    }
    if !any_ok {
        let e = first_err.expect("no attempts succeeded, so one failed");
        return Err(CliError {
            code: e.code,
            message: e.message.clone(),
        });
    }
    sheet.emit(&a.out)
}

// ---------------------------------------------------------------------------
// coeffs / table1
// ---------------------------------------------------------------------------

fn method_label(m: CoeffMethod) -> &'static str {
    match m {
        CoeffMethod::ClosedForm => "closed-form",
        CoeffMethod::InverseFactorial => "inverse-factorial",
    }
}

fn cmd_coeffs(a: &CoeffsArgs) -> Result<(), CliError> {
    let sigma = parse_sigma(&a.sigma)?;
    if a.terms == 0 {
        return Err(CliError::usage("--terms must be at least 1"));
    }
    let digits = a.out.digits.max(16);
    let table: CoefficientTable = match a.method {
        CoeffsMethodArg::Auto => coefficients(&sigma, a.terms, digits)?,
        CoeffsMethodArg::Closed => c_closed(&sigma, a.terms, digits)?,
        CoeffsMethodArg::Algorithm => c_algorithm(&sigma, a.terms, digits)?,
    };
    let mut sheet = Sheet::new(&["j", "c_j", "method"]);
    for (j, c) in table.coeffs.iter().enumerate() {
        sheet.push(vec![
            j.to_string(),
            fmt_float(c, a.out.digits),
            method_label(table.method).into(),
        ]);
    }
    sheet.emit(&a.out)
}

/// Published reference values for the coefficient table (10 decimal
/// places), used only to print computed-vs-published ratios.
const TABLE1_PUBLISHED: [(&str, i64, i64, [f64; 7]); 2] = [
    (
        "1/4",
        1,
        4,
        [
            1.0000000000,
            0.1458333333,
            0.0835503472,
            0.0597617067,
            0.0052249186,
            -0.2249669579,
            -1.1657705000,
        ],
    ),
    (
        "3/4",
        3,
        4,
        [
            1.0000000000,
            -0.0347222222,
            -0.0167582948,
            -0.0224719333,
            -0.0510817883,
            -0.1651975373,
            -0.6952815250,
        ],
    ),
];

fn cmd_table1(out: &OutArgs) -> Result<(), CliError> {
    let mut sheet = Sheet::new(&["sigma", "j", "closed", "algorithm", "published", "ratio"]);
    for (label, num, den, published) in TABLE1_PUBLISHED.iter() {
        let sigma = Real::ratio(*num, *den);
        let closed = c_closed(&sigma, 7, 30)?;
        let alg = c_algorithm(&sigma, 7, 30)?;
        for j in 0..7 {
            let c = closed.coeffs[j].to_f64();
            let a = alg.coeffs[j].to_f64();
            let p = published[j];
            sheet.push(vec![
                label.to_string(),
                j.to_string(),
                format!("{c:.10}"),
                format!("{a:.10}"),
                format!("{p:.10}"),
                format!("{:.3}", c / p),
            ]);
        }
    }
    sheet.emit(out)
}

// ---------------------------------------------------------------------------
// table2 / table3
// ---------------------------------------------------------------------------

/// Decimal digits for the series oracle behind the error tables.
const ORACLE_DIGITS: u32 = 50;

/// Published reference values for the positive-axis truncation-error table:
/// relative error of the exponential expansion truncated after j+1 terms.
const TABLE2_COLS: [(&str, i64, i64, f64); 4] = [
    ("1/4", 1, 4, 6.0),
    ("1/4", 1, 4, 10.0),
    ("3/4", 3, 4, 4.0),
    ("3/4", 3, 4, 6.0),
];
const TABLE2_ROWS: [usize; 5] = [0, 1, 2, 4, 6];
const TABLE2_PUBLISHED: [[f64; 4]; 5] = [
    [2.623e-2, 1.376e-2, 1.262e-3, 2.531e-4],
    [2.819e-3, 7.618e-4, 2.190e-5, 8.881e-7],
    [4.123e-4, 5.561e-5, 1.054e-6, 8.654e-9],
    [2.877e-5, 1.336e-6, 9.988e-9, 3.359e-12],
    [2.915e-5, 3.111e-7, 2.819e-10, 3.874e-15],
];

fn rel_err(value: &Float, exact: &Float) -> Float {
    let wp = value.prec().max(exact.prec());
    let d = Float::with_val(wp, value - exact).abs();
    Float::with_val(wp, &d / exact).abs()
}

fn cmd_table2(out: &OutArgs) -> Result<(), CliError> {
    let mut sheet = Sheet::new(&["sigma", "x", "j", "computed", "published", "ratio"]);
    for (col, (label, num, den, x)) in TABLE2_COLS.iter().enumerate() {
        let sigma = Real::ratio(*num, *den);
        let exact = m_series(&sigma, *x, ORACLE_DIGITS)?.value;
        for (row, &j) in TABLE2_ROWS.iter().enumerate() {
            let approx = m_pos_asympt(&sigma, *x, j + 1)?;
            let rel = rel_err(&approx.value, &exact).to_f64();
            let p = TABLE2_PUBLISHED[row][col];
            sheet.push(vec![
                label.to_string(),
                format!("{x:.0}"),
                j.to_string(),
                format!("{rel:.3e}"),
                format!("{p:.3e}"),
                format!("{:.3}", rel / p),
            ]);
        }
    }
    sheet.emit(out)
}

/// Published reference values for the negative-axis error table, with the
/// stated truncation policies per column: seven exponential terms with the
/// algebraic series absent (sigma = 1/4, 1/3) or optimally truncated
/// (sigma = 2/5), and eleven algebraic terms for sigma = 2/3.
const TABLE3_COLS: [(&str, i64, i64); 4] = [("1/4", 1, 4), ("1/3", 1, 3), ("2/5", 2, 5), ("2/3", 2, 3)];
const TABLE3_X: [f64; 5] = [4.0, 6.0, 8.0, 10.0, 12.0];
const TABLE3_PUBLISHED: [[f64; 4]; 5] = [
    [5.260e-2, 3.447e-4, 6.825e-2, 6.130e-4],
    [2.176e-4, 1.570e-5, 2.863e-2, 2.988e-6],
    [6.088e-6, 2.510e-6, 5.153e-4, 3.365e-9],
    [3.787e-6, 3.111e-7, 4.993e-5, 6.279e-11],
    [1.048e-7, 1.508e-8, 1.431e-7, 2.397e-12],
];

fn table3_opts(label: &str) -> NegOpts {
    match label {
        "2/3" => NegOpts {
            j_exp: Truncation::Optimal,
            k_alg: Truncation::Fixed(11),
        },
        _ => NegOpts {
            j_exp: Truncation::Fixed(7),
            k_alg: Truncation::Optimal,
        },
    }
}

fn cmd_table3(out: &OutArgs) -> Result<(), CliError> {
    let mut sheet = Sheet::new(&["sigma", "x", "computed", "published", "ratio"]);
    for (col, (label, num, den)) in TABLE3_COLS.iter().enumerate() {
        let sigma = Real::ratio(*num, *den);
        let opts = table3_opts(label);
        for (row, &x) in TABLE3_X.iter().enumerate() {
            let exact = m_series(&sigma, -x, ORACLE_DIGITS)?.value;
            let approx = m_neg_asympt(&sigma, x, opts)?;
            let rel = rel_err(&approx.value, &exact).to_f64();
            let p = TABLE3_PUBLISHED[row][col];
            sheet.push(vec![
                label.to_string(),
                format!("{x:.0}"),
                format!("{rel:.3e}"),
                format!("{p:.3e}"),
                format!("{:.3}", rel / p),
            ]);
        }
    }
    sheet.emit(out)
}

// ---------------------------------------------------------------------------
// figure
// ---------------------------------------------------------------------------

fn cmd_figure(a: &FigureArgs) -> Result<(), CliError> {
    if a.n < 2 {
        return Err(CliError::usage("--n must be at least 2 (empty grid)"));
    }
    if !(a.eps > 0.0 && a.eps < 1.0) {
        return Err(CliError::domain("epsilon = 1 - sigma must lie in (0,1)"));
    }
    if a.eps > 0.2 {
        eprintln!(
            "warning: eps = {} is outside the sharply-peaked regime (eps <= 0.2); \
             the limit formulas degrade and the saddle-point method refuses",
            a.eps
        );
    }
    let side = match a.side {
        SideArg::Pos => Side::Pos,
        SideArg::Neg => Side::Neg,
    };
    let (dmin, dmax) = match side {
        Side::Pos => (0.5, 2.0),
        Side::Neg => (4.0, 12.0),
    };
    let x_min = a.x_min.unwrap_or(dmin);
    let x_max = a.x_max.unwrap_or(dmax);
    let mut methods = Vec::new();
    for tok in a.methods.split(',') {
        let m = match tok.trim() {
            "limit" => GridMethod::Limit,
            "kp" => GridMethod::Kp,
            "series" => GridMethod::Series,
            other => {
                return Err(CliError::usage(format!(
                    "unknown method {other:?} (expected limit, kp, series)"
                )))
            }
        };
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    if methods.is_empty() {
        return Err(CliError::usage("--methods must name at least one method"));
    }
    let mut sheet = Sheet::new(&["x", "value", "log10_value", "method", "epsilon"]);
    for method in methods {
        let name = match method {
            GridMethod::Limit => "limit",
            GridMethod::Kp => "kp",
            GridMethod::Series => "series",
        };
        let rows = figure_grid(a.eps, x_min, x_max, a.n, side, method)?;
        for r in rows {
            sheet.push(vec![
                fmt_axis(r.x),
                fmt_float(&r.value, a.out.digits),
                fmt_axis(r.log10_value),
                name.into(),
                format!("{}", a.eps),
            ]);
        }
    }
    sheet.emit(&a.out)
}
