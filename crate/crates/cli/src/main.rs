//! Command-line front end for the pivot machinery.
//!
//! Four subcommands cover the library surface: `pivots` enumerates a pivot
//! sequence with widths and `ω̂` predictions between two end invariants
//! (and compares against a trace triple when one is supplied), `trace`
//! evaluates vertex traces by slope or by sweep depth, `verify` runs the
//! self-checking suites, and `model` exports the block/tube document.
//!
//! Output is JSON (the default) or CSV, written to stdout or `--output`.
//! Runs are deterministic: the same arguments, seed, and precision produce
//! byte-identical output.
//!
//! Exit codes: `0` success (for `verify`, a passing suite); `1` a failing
//! suite or a runtime error; `2` malformed input or an unknown suite;
//! `3` coinciding end invariants.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pivot_kit::farey::Slope;
use pivot_kit::halfplane::{EndInvariant, InteriorPoint, IrrationalEnd};
use pivot_kit::markov::{
    build_matrices, matrix_trace_oracle, trace_sweep, vertex_trace, vertex_trace_mp, AnchoredRep,
    MarkovTriple, TwistWord,
};
use pivot_kit::mobius::{complex_length_from_trace, omega};
use pivot_kit::model::{combinatorial_data, export_model, JsonComplex, JsonWidth};
use pivot_kit::pivot::{compare, pivot_sequence, predict, PivotCase, PivotConfig, PivotError};
use pivot_kit::scalar::Cx;
use pivot_kit::surd::{ContinuedFraction, QuadSurd};
use pivot_kit::verify::{constants_suite, fuchsian_suite, identity_suite, pivot_suite};
use pivot_kit::{Scenario, SuiteReport};

const EXIT_FAIL: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DIAGONAL: u8 = 3;

#[derive(Parser)]
#[command(name = "pivot-kit", version, about = "Pivot sequences, traces, and tube models for once-punctured-torus groups", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the pivot sequence between two end invariants.
    ///
    /// Without --triple the output is the predicted data alone: slopes,
    /// widths, and ω̂ per pivot.  With --triple the traces of the given
    /// representation are evaluated at every pivot and compared against
    /// the predictions.
    Pivots(PivotsArgs),
    /// Evaluate vertex traces of a trace triple.
    Trace(TraceArgs),
    /// Run a verification suite: constants, identities, fuchsian, or pivots.
    Verify(VerifyArgs),
    /// Export the block/tube model document between two end invariants.
    Model(ModelArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct KnobArgs {
    /// Override the prediction distance constant.
    #[arg(long)]
    c1: Option<f64>,
    /// Override the lower length-window constant.
    #[arg(long)]
    c2: Option<f64>,
    /// Override the upper length-window constant.
    #[arg(long)]
    c3: Option<f64>,
    /// Override the rotation-window constant.
    #[arg(long)]
    c4: Option<f64>,
    /// Short-curve cutoff slack.
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
}

impl KnobArgs {
    fn to_config(&self) -> PivotConfig {
        let d = PivotConfig::default();
        PivotConfig {
            c1: self.c1.unwrap_or(d.c1),
            c2: self.c2.unwrap_or(d.c2),
            c3: self.c3.unwrap_or(d.c3),
            c4: self.c4.unwrap_or(d.c4),
            eps: self.eps,
        }
    }
}

#[derive(Args)]
struct PivotsArgs {
    /// Minus end invariant: "inf", "p/q", "[a0;a1,...]", "(p+q*sqrt(d))/r", or "x+yi".
    #[arg(long)]
    nu_minus: String,
    /// Plus end invariant, same grammar.
    #[arg(long)]
    nu_plus: String,
    /// Enumeration window per irrational end (at least 1).
    #[arg(long, default_value_t = 6)]
    window: u32,
    /// Trace triple "x,y,z" (complex entries "a+bi") to compare against.
    #[arg(long)]
    triple: Option<String>,
    #[command(flatten)]
    knobs: KnobArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct TraceArgs {
    /// Trace triple "x,y,z" anchored at slopes ∞, 0, −1.
    #[arg(long)]
    triple: String,
    /// Evaluate a single slope ("inf", integer, or "p/q").
    #[arg(long, conflicts_with = "depth")]
    slope: Option<String>,
    /// Sweep every slope within this many flips of the base triangle.
    #[arg(long, default_value_t = 3)]
    depth: u32,
    /// Cross-check each trace against explicit matrix products.
    #[arg(long)]
    oracle: bool,
    /// Working precision in bits (53..=4096) for single-slope evaluation;
    /// defaults to PIVOT_KIT_PRECISION or 53.
    #[arg(long)]
    precision: Option<u32>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: constants, identities, fuchsian, or pivots.
    suite: String,
    /// Sample count for the identity suite.
    #[arg(short = 'n', long = "cases", default_value_t = 1000)]
    cases: usize,
    /// Random seed for sample generation.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Triple count for the Fuchsian suite.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Farey sweep depth (Fuchsian and pivot suites).
    #[arg(long)]
    depth: Option<u32>,
    /// Enumeration window for the pivot suite.
    #[arg(long, default_value_t = 8)]
    window: u32,
    /// Pivot-suite scenario: "modular", "maskit=Y", "monodromy=WORD", or "custom".
    #[arg(long)]
    scenario: Option<String>,
    #[command(flatten)]
    knobs: KnobArgs,
    /// Trace triple for the custom scenario.
    #[arg(long)]
    triple: Option<String>,
    /// Minus end invariant for the custom scenario.
    #[arg(long)]
    nu_minus: Option<String>,
    /// Plus end invariant for the custom scenario.
    #[arg(long)]
    nu_plus: Option<String>,
    /// Working precision in bits (53..=4096) for the identity suite;
    /// defaults to PIVOT_KIT_PRECISION or 53.
    #[arg(long)]
    precision: Option<u32>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ModelArgs {
    /// Minus end invariant, same grammar as `pivots`.
    #[arg(long)]
    nu_minus: String,
    /// Plus end invariant.
    #[arg(long)]
    nu_plus: String,
    /// Enumeration window per irrational end (at least 1).
    #[arg(long, default_value_t = 6)]
    window: u32,
    #[command(flatten)]
    out: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Pivots(a) => cmd_pivots(a),
        Command::Trace(a) => cmd_trace(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Model(a) => cmd_model(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("pivot-kit: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// An error routed to stderr with its exit code.
struct CliError {
    code: u8,
    message: String,
}

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError { code: EXIT_PARSE, message: msg.into() }
}

fn run_err(msg: impl Into<String>) -> CliError {
    CliError { code: EXIT_FAIL, message: msg.into() }
}

fn pivot_err(e: PivotError) -> CliError {
    let code = match e {
        PivotError::Diagonal => EXIT_DIAGONAL,
        PivotError::BadWindow => EXIT_PARSE,
        _ => EXIT_FAIL,
    };
    CliError { code, message: e.to_string() }
}

// ---------------------------------------------------------------------------
// Input grammar
// ---------------------------------------------------------------------------

/// Parses an end invariant.
///
/// Accepted forms, in dispatch order: `inf`; a surd `(p+q*sqrt(d))/r`; a
/// continued fraction `[a0;a1,a2]` — exact rational when finite, a surd
/// when marked ` period=k`, and a prefix of an unknown irrational when it
/// ends with `,...`; an interior point `x+yi` with `y > 0`; a rational
/// slope `p/q` or integer.
fn parse_end(s: &str) -> Result<EndInvariant, CliError> {
    let t = s.trim();
    let bad = |detail: &str| parse_err(format!("cannot parse end invariant {t:?}: {detail}"));
    if t.is_empty() {
        return Err(bad("empty"));
    }
    if t == "inf" || t == "∞" {
        return Ok(EndInvariant::RationalBoundary(Slope::INFINITY));
    }
    if t.contains("sqrt") {
        let x = QuadSurd::from_str(t).map_err(|e| bad(&e.to_string()))?;
        return Ok(match x.as_rational() {
            Some(r) => EndInvariant::RationalBoundary(rational_slope(&r, t)?),
            None => EndInvariant::IrrationalBoundary(IrrationalEnd::Surd(x)),
        });
    }
    if t.starts_with('[') {
        return parse_cf_end(t);
    }
    if t.contains('i') {
        let (x, y) = parse_complex(t).map_err(|e| bad(&e))?;
        let p = InteriorPoint::from_f64(x, y).map_err(|e| bad(&e.to_string()))?;
        return Ok(EndInvariant::Interior(p));
    }
    let s: Slope = t.parse().map_err(|_| bad("expected inf, p/q, an integer, [a0;...], a surd, or x+yi"))?;
    Ok(EndInvariant::RationalBoundary(s))
}

/// A continued-fraction end: periodic → surd, trailing `...` → prefix,
/// plain finite → the exact rational it denotes.
fn parse_cf_end(t: &str) -> Result<EndInvariant, CliError> {
    let bad = |detail: &str| parse_err(format!("cannot parse end invariant {t:?}: {detail}"));
    let (text, is_prefix) = match t.find("...") {
        Some(k) => {
            let before = t[..k].trim_end().trim_end_matches([',', ';']);
            let after = t[k + 3..].trim_start();
            if !after.starts_with(']') {
                return Err(bad("`...` must come last"));
            }
            (format!("{before}{after}"), true)
        }
        None => (t.to_string(), false),
    };
    let cf = ContinuedFraction::from_str(&text).map_err(|e| bad(&e.to_string()))?;
    if is_prefix {
        if cf.period().is_some() {
            return Err(bad("a prefix cannot also be periodic"));
        }
        return Ok(EndInvariant::IrrationalBoundary(IrrationalEnd::Prefix(cf)));
    }
    if let Some(x) = cf.to_surd() {
        return Ok(EndInvariant::IrrationalBoundary(IrrationalEnd::Surd(x)));
    }
    let value = cf.convergents().pop().ok_or_else(|| bad("no coefficients"))?;
    Ok(EndInvariant::RationalBoundary(rational_slope(&value, t)?))
}

/// A `BigRational` as a `Slope`, rejecting components beyond `i64`.
fn rational_slope(
    r: &num_rational::BigRational,
    origin: &str,
) -> Result<Slope, CliError> {
    let too_big = || parse_err(format!("rational {origin:?} exceeds the supported slope range"));
    let p: i64 = r.numer().to_string().parse().map_err(|_| too_big())?;
    let q: i64 = r.denom().to_string().parse().map_err(|_| too_big())?;
    Slope::new(p, q).map_err(|e| parse_err(format!("cannot parse {origin:?}: {e}")))
}

/// Parses `a`, `bi`, or `a±bi`, with `i` and `-i` for unit imaginary parts.
fn parse_complex(s: &str) -> Result<(f64, f64), String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("expected a complex number like 3, 2i, or 1.5-0.5i, got {s:?}");
    if t.is_empty() {
        return Err(bad());
    }
    if !t.ends_with('i') {
        return t.parse::<f64>().map(|x| (x, 0.0)).map_err(|_| bad());
    }
    let body = &t[..t.len() - 1];
    let unit = |part: &str| -> Result<f64, String> {
        match part {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => part.parse::<f64>().map_err(|_| bad()),
        }
    };
    // The split point is the last sign that neither leads the string nor
    // follows an exponent marker.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re: f64 = body[..k].parse().map_err(|_| bad())?;
            Ok((re, unit(&body[k..])?))
        }
        None => Ok((0.0, unit(body)?)),
    }
}

/// Parses a comma-separated trace triple of complex entries.
fn parse_triple(s: &str) -> Result<MarkovTriple<f64>, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(parse_err(format!(
            "a triple needs exactly three comma-separated entries, got {}",
            parts.len()
        )));
    }
    let mut c = parts.iter().map(|p| parse_complex(p));
    let x = c.next().unwrap().map_err(parse_err)?;
    let y = c.next().unwrap().map_err(parse_err)?;
    let z = c.next().unwrap().map_err(parse_err)?;
    Ok(MarkovTriple::new(
        Cx::new(x.0, x.1),
        Cx::new(y.0, y.1),
        Cx::new(z.0, z.1),
    ))
}

/// Resolves the working precision: flag, then `PIVOT_KIT_PRECISION`, then 53.
fn resolve_precision(flag: Option<u32>) -> Result<u32, CliError> {
    let bits = match flag {
        Some(b) => b,
        None => match std::env::var("PIVOT_KIT_PRECISION") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("PIVOT_KIT_PRECISION is not an integer: {v:?}")))?,
            Err(_) => 53,
        },
    };
    if !(53..=4096).contains(&bits) {
        return Err(parse_err(format!("precision must lie in 53..=4096, got {bits}")));
    }
    Ok(bits)
}

fn check_window(window: u32) -> Result<(), CliError> {
    if window == 0 {
        return Err(parse_err("window must be at least 1"));
    }
    Ok(())
}

fn check_depth(depth: u32) -> Result<(), CliError> {
    if depth == 0 {
        return Err(parse_err("depth must be at least 1"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

fn emit(out: &OutputArgs, text: String) -> Result<(), CliError> {
    match &out.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| run_err(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| run_err(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// One CSV cell: empty for `None`, shortest-roundtrip decimal otherwise.
fn cell(v: Option<f64>) -> String {
    match v {
        Some(x) if x.is_finite() => format!("{x}"),
        Some(_) => "inf".to_string(),
        None => String::new(),
    }
}

fn int_cell(v: Option<i64>) -> String {
    v.map(|w| w.to_string()).unwrap_or_default()
}

// ---------------------------------------------------------------------------
// pivots
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct WindowDoc {
    requested: u32,
    truncated_minus: bool,
    truncated_plus: bool,
}

#[derive(Serialize)]
struct PredictionRow {
    index: i64,
    slope: Slope,
    width: Option<i64>,
    internal: bool,
    omega_hat: JsonComplex,
    approx: bool,
}

#[derive(Serialize)]
struct PivotsDoc<R: Serialize> {
    nu_minus: String,
    nu_plus: String,
    case: &'static str,
    window: WindowDoc,
    alpha_minus: Option<Slope>,
    alpha_plus: Option<Slope>,
    #[serde(flatten)]
    body: R,
}

#[derive(Serialize)]
struct PredictionBody {
    pivots: Vec<PredictionRow>,
}

#[derive(Serialize)]
struct CompareBody {
    triple: [[f64; 2]; 3],
    report: pivot_kit::pivot::PivotReport,
}

fn case_name(c: PivotCase) -> &'static str {
    match c {
        PivotCase::Normal => "normal",
        PivotCase::EmptyE => "empty",
        PivotCase::SingletonE => "singleton",
    }
}

fn json_cx(v: &Option<pivot_kit::Complex64>) -> JsonComplex {
    match v {
        Some(c) => JsonComplex::Pair([c.re, c.im]),
        None => JsonComplex::Inf("inf".to_string()),
    }
}

fn cmd_pivots(a: PivotsArgs) -> Result<ExitCode, CliError> {
    check_window(a.window)?;
    let nm = parse_end(&a.nu_minus)?;
    let np = parse_end(&a.nu_plus)?;
    let seq = pivot_sequence(&nm, &np, a.window).map_err(pivot_err)?;
    let cfg = a.knobs.to_config();
    let preds = predict(&seq, &nm, &np, &cfg);
    let window = WindowDoc {
        requested: seq.window.requested,
        truncated_minus: seq.window.truncated_minus,
        truncated_plus: seq.window.truncated_plus,
    };

    let text = match &a.triple {
        None => {
            let rows: Vec<PredictionRow> = seq
                .entries
                .iter()
                .zip(&preds)
                .map(|(e, p)| PredictionRow {
                    index: e.index,
                    slope: e.slope,
                    width: e.width,
                    internal: e.internal,
                    omega_hat: json_cx(&p.omega_hat),
                    approx: p.approx,
                })
                .collect();
            match a.out.format {
                Format::Json => to_json(&PivotsDoc {
                    nu_minus: a.nu_minus.clone(),
                    nu_plus: a.nu_plus.clone(),
                    case: case_name(seq.case),
                    window,
                    alpha_minus: seq.alpha_minus,
                    alpha_plus: seq.alpha_plus,
                    body: PredictionBody { pivots: rows },
                })?,
                Format::Csv => {
                    let mut s = String::from("n,slope,w,re_omega_hat,im_omega_hat\n");
                    for r in &rows {
                        let (re, im) = match &r.omega_hat {
                            JsonComplex::Pair(p) => (cell(Some(p[0])), cell(Some(p[1]))),
                            JsonComplex::Inf(_) => ("inf".to_string(), "inf".to_string()),
                        };
                        let _ = writeln!(s, "{},{},{},{re},{im}", r.index, r.slope, int_cell(r.width));
                    }
                    s
                }
            }
        }
        Some(tstr) => {
            let triple = parse_triple(tstr)?;
            if !triple.is_on_variety(1e-6) {
                eprintln!("pivot-kit: warning: triple {triple} is off the character variety");
            }
            let rep = AnchoredRep::new(triple.clone()).map_err(|e| run_err(e.to_string()))?;
            let report = compare(&rep, &preds, &cfg).map_err(pivot_err)?;
            match a.out.format {
                Format::Json => to_json(&PivotsDoc {
                    nu_minus: a.nu_minus.clone(),
                    nu_plus: a.nu_plus.clone(),
                    case: case_name(seq.case),
                    window,
                    alpha_minus: seq.alpha_minus,
                    alpha_plus: seq.alpha_plus,
                    body: CompareBody {
                        triple: [
                            [triple.x.re, triple.x.im],
                            [triple.y.re, triple.y.im],
                            [triple.z.re, triple.z.im],
                        ],
                        report,
                    },
                })?,
                Format::Csv => {
                    let mut s = String::from("n,w,re_omega,im_omega,h2\n");
                    for r in &report.rows {
                        let (re, im) = match r.omega_actual {
                            Some(p) => (cell(Some(p[0])), cell(Some(p[1]))),
                            None => (String::new(), String::new()),
                        };
                        let _ = writeln!(
                            s,
                            "{},{},{re},{im},{}",
                            r.index,
                            int_cell(r.width),
                            cell(r.h2_distance)
                        );
                    }
                    s
                }
            }
        }
    };
    emit(&a.out, text)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// trace
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct TraceRow {
    slope: Slope,
    trace: [f64; 2],
    lambda: [f64; 2],
    omega: JsonComplex,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_diff: Option<f64>,
}

#[derive(Serialize)]
struct TraceDoc {
    triple: [[f64; 2]; 3],
    precision: u32,
    entries: Vec<TraceRow>,
}

fn trace_row(
    slope: Slope,
    t: Cx<f64>,
    oracle: Option<&(pivot_kit::mobius::MoebiusC<f64>, pivot_kit::mobius::MoebiusC<f64>)>,
) -> Result<TraceRow, CliError> {
    let lambda = complex_length_from_trace(&t);
    let om = omega(&lambda);
    let oracle_diff = match oracle {
        Some((a, b)) => {
            let got = matrix_trace_oracle(a, b, &slope).map_err(|e| run_err(e.to_string()))?;
            Some((got - t.clone()).abs())
        }
        None => None,
    };
    Ok(TraceRow {
        slope,
        trace: [t.re, t.im],
        lambda: [lambda.re, lambda.im],
        omega: json_cx(&om),
        oracle_diff,
    })
}

fn cmd_trace(a: TraceArgs) -> Result<ExitCode, CliError> {
    let bits = resolve_precision(a.precision)?;
    let triple = parse_triple(&a.triple)?;
    if !triple.is_on_variety(1e-6) {
        eprintln!("pivot-kit: warning: triple {triple} is off the character variety");
    }
    let rep = AnchoredRep::new(triple.clone()).map_err(|e| run_err(e.to_string()))?;
    let mats = if a.oracle {
        Some(build_matrices(&triple).map_err(|e| run_err(e.to_string()))?)
    } else {
        None
    };

    let entries = match &a.slope {
        Some(sstr) => {
            let v: Slope = sstr
                .parse()
                .map_err(|_| parse_err(format!("cannot parse slope {sstr:?}")))?;
            let t = if bits > 53 {
                vertex_trace_mp(&rep, &v, bits)
                    .map(|t| t.to_c64())
                    .map_err(|e| run_err(e.to_string()))?
            } else {
                vertex_trace(&rep, &v).map_err(|e| run_err(e.to_string()))?
            };
            vec![trace_row(v, t, mats.as_ref())?]
        }
        None => {
            check_depth(a.depth)?;
            let mut rows = Vec::new();
            for (v, t) in trace_sweep(&rep.triple, a.depth) {
                rows.push(trace_row(v, t, mats.as_ref())?);
            }
            rows
        }
    };

    let text = match a.out.format {
        Format::Json => to_json(&TraceDoc {
            triple: [
                [triple.x.re, triple.x.im],
                [triple.y.re, triple.y.im],
                [triple.z.re, triple.z.im],
            ],
            precision: bits,
            entries,
        })?,
        Format::Csv => {
            let mut s = String::from(if a.oracle {
                "slope,re_trace,im_trace,re_lambda,im_lambda,re_omega,im_omega,oracle_diff\n"
            } else {
                "slope,re_trace,im_trace,re_lambda,im_lambda,re_omega,im_omega\n"
            });
            for r in &entries {
                let (re, im) = match &r.omega {
                    JsonComplex::Pair(p) => (cell(Some(p[0])), cell(Some(p[1]))),
                    JsonComplex::Inf(_) => ("inf".to_string(), "inf".to_string()),
                };
                let _ = write!(
                    s,
                    "{},{},{},{},{},{re},{im}",
                    r.slope,
                    cell(Some(r.trace[0])),
                    cell(Some(r.trace[1])),
                    cell(Some(r.lambda[0])),
                    cell(Some(r.lambda[1])),
                );
                if a.oracle {
                    let _ = write!(s, ",{}", cell(r.oracle_diff));
                }
                s.push('\n');
            }
            s
        }
    };
    emit(&a.out, text)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn parse_scenario(a: &VerifyArgs) -> Result<Scenario, CliError> {
    let s = a
        .scenario
        .as_deref()
        .ok_or_else(|| parse_err("the pivots suite needs --scenario"))?;
    if s == "modular" {
        return Ok(Scenario::Modular);
    }
    if let Some(y) = s.strip_prefix("maskit=") {
        let y: f64 = y
            .parse()
            .map_err(|_| parse_err(format!("maskit parameter is not a number: {y:?}")))?;
        return Ok(Scenario::Maskit { y });
    }
    if let Some(w) = s.strip_prefix("monodromy=") {
        let word: TwistWord = w
            .parse()
            .map_err(|e| parse_err(format!("cannot parse twist word {w:?}: {e}")))?;
        return Ok(Scenario::Monodromy { word });
    }
    if s == "custom" {
        let t = a
            .triple
            .as_deref()
            .ok_or_else(|| parse_err("the custom scenario needs --triple"))?;
        let nm = a
            .nu_minus
            .as_deref()
            .ok_or_else(|| parse_err("the custom scenario needs --nu-minus"))?;
        let np = a
            .nu_plus
            .as_deref()
            .ok_or_else(|| parse_err("the custom scenario needs --nu-plus"))?;
        return Ok(Scenario::Custom {
            triple: parse_triple(t)?,
            nu_minus: parse_end(nm)?,
            nu_plus: parse_end(np)?,
        });
    }
    Err(parse_err(format!(
        "unknown scenario {s:?}: expected modular, maskit=Y, monodromy=WORD, or custom"
    )))
}

fn report_text(report: &SuiteReport, out: &OutputArgs) -> Result<String, CliError> {
    match out.format {
        Format::Json => to_json(report),
        Format::Csv => {
            let mut s = String::from("check,value,tolerance,pass\n");
            for c in &report.checks {
                let _ = writeln!(
                    s,
                    "\"{}\",{},{},{}",
                    c.name.replace('"', "\"\""),
                    cell(Some(c.value)),
                    cell(Some(c.tolerance)),
                    c.pass
                );
            }
            Ok(s)
        }
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode, CliError> {
    let report = match a.suite.as_str() {
        "constants" => constants_suite(),
        "identities" => {
            let bits = resolve_precision(a.precision)?;
            identity_suite(a.cases, a.seed, bits)
        }
        "fuchsian" => {
            let depth = a.depth.unwrap_or(12);
            check_depth(depth)?;
            fuchsian_suite(a.samples, depth, a.seed)
        }
        "pivots" => {
            let scenario = parse_scenario(&a)?;
            let depth = a.depth.unwrap_or(10);
            check_window(a.window)?;
            check_depth(depth)?;
            let cfg = a.knobs.to_config();
            pivot_suite(&scenario, a.window, depth, &cfg).map_err(pivot_err)?
        }
        other => {
            return Err(parse_err(format!(
                "unknown suite {other:?}: expected constants, identities, fuchsian, or pivots"
            )))
        }
    };
    let text = report_text(&report, &a.out)?;
    emit(&a.out, text)?;
    if report.pass {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("pivot-kit: suite {} failed", report.suite);
        Ok(ExitCode::from(EXIT_FAIL))
    }
}

// ---------------------------------------------------------------------------
// model
// ---------------------------------------------------------------------------

fn cmd_model(a: ModelArgs) -> Result<ExitCode, CliError> {
    check_window(a.window)?;
    let nm = parse_end(&a.nu_minus)?;
    let np = parse_end(&a.nu_plus)?;
    let seq = pivot_sequence(&nm, &np, a.window).map_err(pivot_err)?;
    let sigma = combinatorial_data(&seq, &nm, &np).map_err(|e| run_err(e.to_string()))?;
    let cfg = PivotConfig::default();
    let preds = predict(&seq, &nm, &np, &cfg);
    let doc = export_model(&sigma, &seq, &preds).map_err(|e| run_err(e.to_string()))?;

    let text = match a.out.format {
        Format::Json => to_json(&doc)?,
        Format::Csv => {
            let mut s = String::from("n,kind,width,re_tau,im_tau\n");
            for b in &doc.blocks {
                let kind = serde_json::to_value(&b.kind)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default();
                let w = match &b.width {
                    Some(JsonWidth::Int(n)) => n.to_string(),
                    Some(JsonWidth::Inf(_)) => "inf".to_string(),
                    None => String::new(),
                };
                let (re, im) = match &b.tau {
                    JsonComplex::Pair(p) => (cell(Some(p[0])), cell(Some(p[1]))),
                    JsonComplex::Inf(_) => ("inf".to_string(), "inf".to_string()),
                };
                let _ = writeln!(s, "{},{kind},{w},{re},{im}", b.n);
            }
            s
        }
    };
    emit(&a.out, text)?;
    Ok(ExitCode::SUCCESS)
}
