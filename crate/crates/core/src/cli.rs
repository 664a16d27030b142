//! Command-line front end.
//!
//! Every subcommand emits one report. JSON reports have the shape
//! `{command, config, result, diagnostics}`; `csv` is accepted only by the
//! subcommands that produce sequences.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain error, 4 negative verdict.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::fixed_points::small_base_threshold;
use crate::analysis::{
    atlas_build, certify_pow, certify_quad, certify_quad_with_lambda, constants_ab,
    contraction_check, minus_fixed_point, plus_fixed_points, quad_range_endpoints,
    scan_quad_extended, suitability_report, two_cycle, GridSpec, PhiFamily,
};
use crate::error::Error;
use crate::evaluator::{
    classify, interval_sequence, ClassifyOptions, Interval, TowerStatus, DEFAULT_MAX_STEPS,
    DEFAULT_TOL,
};
use crate::representer::{alternate_expansion, expand, roundtrip, Verdict};
use crate::selftest::{run_all, DEFAULT_SEED};
use crate::words::{parse_word, InfiniteWord, Word};
use crate::xreal::{Base, XReal};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_NEGATIVE: i32 = 4;

pub const MAX_STEPS_ENV: &str = "EXPTOWER_MAX_STEPS";

const WORD_GRAMMAR: &str =
    "WORD := SIGNS | SIGNS '(' SIGNS+ ')' with SIGNS over {+,-}; aliases all+ and all-";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Pow,
    Quad,
    Both,
}

#[derive(Debug, Parser)]
#[command(
    name = "exptower",
    version,
    about = "Infinite signed exponential towers with base e^a"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify the truncation sequence of an eventually periodic word.
    Eval(EvalArgs),
    /// Greedy sign expansion of a target.
    Expand(ExpandArgs),
    /// Expand a target, evaluate the truncations and report the residuals.
    Roundtrip(RoundtripArgs),
    /// Fixed points of f_+ and f_-.
    FixedPoints(BaseArgs),
    /// Attracting two-cycle of f_- for a > e.
    Cycle(CycleArgs),
    /// The constants A and B and the quadratic-family ranges.
    Constants(ConstantsArgs),
    /// Contraction certificates.
    Certify(CertifyArgs),
    /// Weighted measure of an interval and of its two images.
    Measure(MeasureArgs),
    /// Depth-bounded atlas of the non-representable set (a <= 1/e).
    Atlas(AtlasArgs),
    /// Suitability verdict for a base.
    Suitability(BaseArgs),
    /// Run the built-in acceptance checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
struct BaseArgs {
    /// The exponent a > 0 of the base e^a.
    #[arg(long, allow_hyphen_values = true)]
    base: f64,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    base: BaseArgs,
    /// Eventually periodic word, e.g. "+-(-)".
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    /// Step cap; defaults to EXPTOWER_MAX_STEPS or 10000.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Number of nested intervals to report.
    #[arg(long, default_value_t = 30)]
    intervals: usize,
}

#[derive(Debug, Args)]
struct ExpandArgs {
    #[command(flatten)]
    base: BaseArgs,
    #[arg(long, allow_hyphen_values = true)]
    target: XReal,
    #[arg(long, default_value_t = 60)]
    signs: usize,
    /// Take `-` at an exact zero of the orbit.
    #[arg(long)]
    alternate: bool,
}

#[derive(Debug, Args)]
struct RoundtripArgs {
    #[command(flatten)]
    base: BaseArgs,
    #[arg(long, allow_hyphen_values = true)]
    target: XReal,
    #[arg(long, default_value_t = 200)]
    signs: usize,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Debug, Args)]
struct CycleArgs {
    #[command(flatten)]
    base: BaseArgs,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Debug, Args)]
struct ConstantsArgs {
    #[arg(long, default_value_t = 1e-15)]
    tol: f64,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, default_value_t = -40.0, allow_hyphen_values = true)]
    grid_lo: f64,
    #[arg(long, default_value_t = 40.0, allow_hyphen_values = true)]
    grid_hi: f64,
    #[arg(long, default_value_t = 100_000)]
    grid_points: usize,
}

impl GridArgs {
    fn spec(&self) -> Result<GridSpec, String> {
        if self.grid_lo.partial_cmp(&self.grid_hi) != Some(std::cmp::Ordering::Less)
            || self.grid_points < 2
        {
            return Err("--grid-lo must be below --grid-hi and --grid-points at least 2".into());
        }
        Ok(GridSpec {
            lo: self.grid_lo,
            hi: self.grid_hi,
            points: self.grid_points,
        })
    }
}

#[derive(Debug, Args)]
struct CertifyArgs {
    #[command(flatten)]
    base: BaseArgs,
    #[arg(long, value_enum, default_value = "both")]
    family: Family,
    /// Fixed λ for the quadratic family instead of the solved one.
    #[arg(long)]
    lambda: Option<f64>,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Debug, Args)]
struct MeasureArgs {
    #[command(flatten)]
    base: BaseArgs,
    /// `quad` or `pow`.
    #[arg(long, value_enum, default_value = "quad")]
    family: Family,
    /// λ for the quadratic family; defaults to the certified one.
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    lo: XReal,
    #[arg(long, allow_hyphen_values = true)]
    hi: XReal,
}

#[derive(Debug, Args)]
struct AtlasArgs {
    #[command(flatten)]
    base: BaseArgs,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Report the membership of this point.
    #[arg(long, allow_hyphen_values = true)]
    target: Option<XReal>,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

/// Failure of a subcommand before a report exists.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidBase(_) | Error::NotANumber => {
                Failure::Usage(e.to_string())
            }
            Error::OutOfRange(msg) | Error::NoCycle(msg) | Error::Domain(msg) => {
                Failure::Domain(msg)
            }
            other => Failure::Domain(other.to_string()),
        }
    }
}

/// A finished report plus the rows used for csv output.
struct Report {
    command: &'static str,
    config: Value,
    result: Value,
    diagnostics: Value,
    rows: Option<Table>,
    negative: bool,
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn base_of(a: f64) -> Result<Base, Failure> {
    Base::new(a).map_err(|e| Failure::Usage(format!("--base: {e}")))
}

fn infinite_word(text: &str) -> Result<InfiniteWord, Failure> {
    match parse_word(text) {
        Ok(Word::Infinite(w)) => Ok(w),
        Ok(Word::Finite(_)) => Err(Failure::Usage(format!(
            "--word: '{text}' is finite, a periodic tail is required\n  {WORD_GRAMMAR}"
        ))),
        Err(e) => Err(Failure::Usage(format!("--word: {e}\n  {WORD_GRAMMAR}"))),
    }
}

fn interval_value(i: &Interval) -> Value {
    json!({ "lo": i.lo, "hi": i.hi })
}

fn max_steps_from_env(value: Option<String>) -> Result<usize, Failure> {
    match value {
        None => Ok(DEFAULT_MAX_STEPS),
        Some(s) => s.trim().parse::<usize>().map_err(|_| {
            Failure::Usage(format!(
                "{MAX_STEPS_ENV}: expected a positive integer, got '{s}'"
            ))
        }),
    }
}

fn eval(args: &EvalArgs) -> Result<Report, Failure> {
    let base = base_of(args.base.base)?;
    let word = infinite_word(&args.word)?;
    let max_steps = match args.steps {
        Some(n) => n,
        None => max_steps_from_env(std::env::var(MAX_STEPS_ENV).ok())?,
    };
    let opts = ClassifyOptions::default()
        .with_max_steps(max_steps)
        .with_tol(args.tol)
        .with_trace();
    let report = classify(base, &word, opts);
    let intervals = interval_sequence(base, &word, args.intervals);
    let trace = report.trace.clone().unwrap_or_default();
    let n_rows = trace.len().max(intervals.len());
    let rows = (0..n_rows)
        .map(|k| {
            let cell = |v: Option<XReal>| v.map(|x| x.to_string()).unwrap_or_default();
            vec![
                (k + 1).to_string(),
                cell(trace.get(k).copied()),
                cell(intervals.get(k).map(|i| i.lo)),
                cell(intervals.get(k).map(|i| i.hi)),
            ]
        })
        .collect();
    let negative = !report.status.is_converged();
    let last_width = intervals.last().map(|i| i.width());
    Ok(Report {
        command: "eval",
        config: json!({
            "base": base, "word": word.to_string(), "max_steps": max_steps,
            "tol": args.tol, "window": opts.window, "intervals": args.intervals,
        }),
        result: json!({
            "status": report.status,
            "limit": report.limit,
            "cycle": report.cycle,
            "steps_used": report.steps_used,
            "intervals": intervals.iter().map(interval_value).collect::<Vec<_>>(),
        }),
        diagnostics: json!({
            "tol": args.tol,
            "last_interval_width": last_width,
            "two_cycle": report.status == TowerStatus::TwoCycle,
        }),
        rows: Some(Table {
            header: vec!["n", "u_n", "lo", "hi"],
            rows,
        }),
        negative,
    })
}

fn expand_cmd(args: &ExpandArgs) -> Result<Report, Failure> {
    let base = base_of(args.base.base)?;
    let expansion = if args.alternate {
        alternate_expansion(base, args.target, args.signs).ok_or_else(|| {
            Failure::Domain("the orbit never reaches 0, so the expansion is unique".into())
        })?
    } else {
        expand(base, args.target, args.signs)
    };
    let rows = expansion
        .orbit
        .iter()
        .enumerate()
        .map(|(k, u)| {
            let sign = if k == 0 {
                String::new()
            } else {
                expansion.signs.sign_at(k).as_char().to_string()
            };
            vec![k.to_string(), sign, u.to_string()]
        })
        .collect();
    Ok(Report {
        command: "expand",
        config: json!({ "base": base, "target": args.target, "signs": args.signs, "alternate": args.alternate }),
        result: json!({
            "word": expansion.word,
            "signs": expansion.signs,
            "orbit": expansion.orbit,
            "hit_zero_at": expansion.hit_zero_at,
            "tail_periodic": expansion.tail_periodic,
        }),
        diagnostics: json!({ "tol": 0.0, "exact_orbit": "each step applies one inverse map in binary64" }),
        rows: Some(Table {
            header: vec!["k", "sign", "u_k"],
            rows,
        }),
        negative: false,
    })
}

fn roundtrip_cmd(args: &RoundtripArgs) -> Result<Report, Failure> {
    let base = base_of(args.base.base)?;
    let r = roundtrip(base, args.target, args.signs, args.tol);
    let rows = r
        .residuals
        .iter()
        .enumerate()
        .map(|(k, v)| vec![(k + 1).to_string(), v.to_string()])
        .collect();
    Ok(Report {
        command: "roundtrip",
        config: json!({ "base": base, "target": args.target, "signs": args.signs, "tol": args.tol }),
        result: json!({
            "word": r.word,
            "verdict": r.verdict,
            "final_residual": r.final_residual,
            "eventually_decreasing": r.eventually_decreasing,
            "residuals": r.residuals,
        }),
        diagnostics: json!({ "tol": args.tol }),
        rows: Some(Table {
            header: vec!["n", "residual"],
            rows,
        }),
        negative: r.verdict != Verdict::Represented,
    })
}

fn fixed_points_cmd(args: &BaseArgs) -> Result<Report, Failure> {
    let base = base_of(args.base)?;
    let plus = plus_fixed_points(base).ok();
    let minus = minus_fixed_point(base);
    Ok(Report {
        command: "fixed-points",
        config: json!({ "base": base }),
        result: json!({ "plus": plus, "minus": minus, "small_base_threshold": small_base_threshold() }),
        diagnostics: json!({
            "tol": f64::EPSILON,
            "plus_note": if plus.is_none() { "f_+ has no fixed point for a > 1/e" } else { "bisection to adjacent floats" },
        }),
        rows: None,
        negative: false,
    })
}

fn cycle_cmd(args: &CycleArgs) -> Result<Report, Failure> {
    let base = base_of(args.base.base)?;
    let cycle = two_cycle(base, args.tol)?;
    let minus = minus_fixed_point(base);
    Ok(Report {
        command: "cycle",
        config: json!({ "base": base, "tol": args.tol }),
        result: json!({ "cycle": cycle, "repulsive_fixed_point": minus.m_minus }),
        diagnostics: json!({ "tol": args.tol }),
        rows: None,
        negative: false,
    })
}

fn constants_cmd(args: &ConstantsArgs) -> Result<Report, Failure> {
    let c = constants_ab(args.tol);
    let (left, right) = quad_range_endpoints();
    let scan = scan_quad_extended();
    Ok(Report {
        command: "constants",
        config: json!({ "tol": args.tol }),
        result: json!({
            "A": c.a, "B": c.b, "product": c.product,
            "quad_range": { "left": left, "right": right },
            "extended_scan": scan,
        }),
        diagnostics: json!({ "tol": c.tol }),
        rows: None,
        negative: false,
    })
}

fn certify_cmd(args: &CertifyArgs) -> Result<Report, Failure> {
    let base = base_of(args.base.base)?;
    let grid = args.grid.spec().map_err(Failure::Usage)?;
    let pow = matches!(args.family, Family::Pow | Family::Both).then(|| certify_pow(base));
    let quad = matches!(args.family, Family::Quad | Family::Both).then(|| match args.lambda {
        Some(l) => certify_quad_with_lambda(base, l, &grid),
        None => certify_quad(base, &grid),
    });
    let verdict =
        pow.as_ref().is_some_and(|c| c.verdict) || quad.as_ref().is_some_and(|c| c.verdict);
    Ok(Report {
        command: "certify",
        config: json!({ "base": base, "family": args.family, "lambda": args.lambda, "grid": grid }),
        result: json!({ "verdict": verdict, "pow": pow, "quad": quad }),
        diagnostics: json!({ "tol": crate::analysis::certificate::GRID_SLACK }),
        rows: None,
        negative: !verdict,
    })
}

fn measure_cmd(args: &MeasureArgs) -> Result<Report, Failure> {
    let base = base_of(args.base.base)?;
    if args.lo > args.hi {
        return Err(Failure::Usage("--lo must not exceed --hi".into()));
    }
    let a = base.value();
    let family = match args.family {
        Family::Pow => PhiFamily::Pow {
            a,
            nu: 1.0 + 1.0 / a,
        },
        Family::Quad => {
            let lambda = match args.lambda {
                Some(l) if l > 0.0 => l,
                Some(_) => return Err(Failure::Usage("--lambda must be positive".into())),
                None => certify_quad(
                    base,
                    &GridSpec {
                        points: 2_000,
                        ..GridSpec::default()
                    },
                )
                .lambda
                .ok_or_else(|| {
                    Failure::Domain(format!("no quadratic weight for a = {a}; pass --lambda"))
                })?,
            };
            PhiFamily::Quad { lambda }
        }
        Family::Both => return Err(Failure::Usage("--family must be quad or pow".into())),
    };
    let interval = Interval::new(args.lo, args.hi)?;
    let check = contraction_check(base, &family, &interval);
    Ok(Report {
        command: "measure",
        config: json!({ "base": base, "family": family, "interval": interval_value(&interval) }),
        result: to_value(&check),
        diagnostics: json!({ "tol": f64::EPSILON, "total_measure": family.total() }),
        rows: None,
        negative: !check.contracted,
    })
}

fn atlas_cmd(args: &AtlasArgs) -> Result<Report, Failure> {
    let base = base_of(args.base.base)?;
    if base.value() > small_base_threshold() {
        return Err(Failure::Domain("base must satisfy a ≤ 1/e".into()));
    }
    let atlas = atlas_build(base, args.depth)?;
    let membership = args.target.map(|t| atlas.membership(t));
    let rows = atlas
        .components
        .iter()
        .enumerate()
        .map(|(k, c)| vec![k.to_string(), c.lo.to_string(), c.hi.to_string()])
        .collect();
    Ok(Report {
        command: "atlas",
        config: json!({ "base": base, "depth": args.depth, "target": args.target }),
        result: json!({
            "m": atlas.m,
            "center_radius": atlas.center_radius,
            "components": atlas.components,
            "pieces": atlas.pieces().len(),
            "max_gap": atlas.max_gap(),
            "membership": membership,
        }),
        diagnostics: json!({ "tol": 0.0, "note": "interval endpoints are images of binary64 endpoints" }),
        rows: Some(Table {
            header: vec!["component", "lo", "hi"],
            rows,
        }),
        negative: false,
    })
}

fn suitability_cmd(args: &BaseArgs) -> Result<Report, Failure> {
    let base = base_of(args.base)?;
    let s = suitability_report(base);
    Ok(Report {
        command: "suitability",
        config: json!({ "base": base }),
        result: json!({ "suitable": s.is_suitable(), "report": s }),
        diagnostics: json!({ "tol": crate::analysis::certificate::GRID_SLACK }),
        rows: None,
        negative: !s.is_suitable(),
    })
}

fn selftest_cmd(args: &SelftestArgs) -> Result<Report, Failure> {
    let outcomes = run_all(args.seed);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let rows = outcomes
        .iter()
        .map(|o| {
            vec![
                o.id.to_string(),
                o.name.to_string(),
                if o.passed { "PASS" } else { "FAIL" }.to_string(),
                o.detail.clone(),
            ]
        })
        .collect();
    Ok(Report {
        command: "selftest",
        config: json!({ "seed": args.seed }),
        result: json!({ "passed": outcomes.len() - failed, "failed": failed, "criteria": outcomes }),
        diagnostics: json!({ "tol": "per criterion" }),
        rows: Some(Table {
            header: vec!["id", "name", "status", "detail"],
            rows,
        }),
        negative: failed > 0,
    })
}

fn render_json(report: &Report) -> String {
    let doc = json!({
        "command": report.command,
        "config": report.config,
        "result": report.result,
        "diagnostics": report.diagnostics,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("json");
    s.push('\n');
    s
}

fn render_csv(table: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header).expect("in-memory write");
    for row in &table.rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) if items.len() > 12 => {
            out.push_str(&format!("{prefix} = [{} items]\n", items.len()));
        }
        Value::Array(items) => {
            for (k, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{k}]"), v, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix} = {s}\n")),
        other => out.push_str(&format!("{prefix} = {other}\n")),
    }
}

fn render_text(report: &Report) -> String {
    let mut s = format!("{}\n", report.command);
    flatten("result", &report.result, &mut s);
    flatten("diagnostics", &report.diagnostics, &mut s);
    s
}

fn dispatch(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Eval(a) => eval(a),
        Command::Expand(a) => expand_cmd(a),
        Command::Roundtrip(a) => roundtrip_cmd(a),
        Command::FixedPoints(a) => fixed_points_cmd(a),
        Command::Cycle(a) => cycle_cmd(a),
        Command::Constants(a) => constants_cmd(a),
        Command::Certify(a) => certify_cmd(a),
        Command::Measure(a) => measure_cmd(a),
        Command::Atlas(a) => atlas_cmd(a),
        Command::Suitability(a) => suitability_cmd(a),
        Command::Selftest(a) => selftest_cmd(a),
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_DOMAIN;
        }
    };
    let text = match cli.format {
        Format::Json => render_json(&report),
        Format::Text => render_text(&report),
        Format::Csv => match &report.rows {
            Some(table) => render_csv(table),
            None => {
                let _ = writeln!(stderr, "error: --format csv is only available for eval, expand, roundtrip, atlas and selftest");
                return EXIT_USAGE;
            }
        },
    };
    let written = match &cli.out {
        Some(path) => {
            fs::write(path, text.as_bytes()).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: cannot write report: {msg}");
        return EXIT_DOMAIN;
    }
    if report.negative {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    }
}

/// Runs the CLI against the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
