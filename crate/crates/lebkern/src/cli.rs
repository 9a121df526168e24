//! Command-line front end: parse JSON task specifications, dispatch the
//! computations, and emit exact-value reports.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse error (malformed
//! flags, files, or JSON), 3 precondition failure (a violated contract of
//! an otherwise well-formed request). All numeric output is exact rational
//! text; `--decimal K` appends a `~`-marked approximation.

use crate::battery::{run_suite, SuiteReport, SUITES};
use crate::descr::{
    family_to_json, parse_family, parse_fn, parse_measure, parse_set, parse_step2d,
};
use crate::lebint::{integral_mplus, integral_over_interval, integral_signed};
use crate::measures::MeasurableSpace;
use crate::product::{tonelli, TonelliFn};
use crate::setsys::{generate, SystemKind};
use crate::xreal::{format_rat, parse_rat, Rat, XReal};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "lebkern",
    about = "Exact-arithmetic measure theory and Lebesgue integration kernel",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a function against a measure, with the adapted-stage table.
    Integrate(TaskArgs),
    /// Generate the subset system of a kind from generator sets.
    SigmaGen(TaskArgs),
    /// Evaluate a measure on a measurable set.
    Measure(TaskArgs),
    /// Compare the direct tensor integral with both iterated integrals.
    Tonelli(TaskArgs),
    /// Run verification suites; with no --suite, runs the full battery.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct TaskArgs {
    /// JSON task file.
    #[arg(long)]
    input: PathBuf,
    /// Adapted-sequence truncation (overrides the file and the default 20).
    #[arg(long)]
    n_max: Option<u32>,
    /// Stage tolerance as a rational (default 1/65536).
    #[arg(long)]
    tol: Option<String>,
    /// Append a k-digit decimal approximation, marked with `~`.
    #[arg(long)]
    decimal: Option<u32>,
    /// Emit a machine-readable JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: dynkin, monotone-class, measure-axioms, convergence,
    /// chebyshev, tonelli. Omit to run all.
    #[arg(long)]
    suite: Option<String>,
    /// Universe size cap for the exhaustive suites (1..=4).
    #[arg(long, default_value_t = 3)]
    size: usize,
    #[arg(long, default_value_t = 20)]
    n_max: u32,
    #[arg(long, default_value = "1/65536")]
    tol: String,
    /// Emit a machine-readable JSON report.
    #[arg(long)]
    json: bool,
}

/// Error classified by exit code.
enum CliError {
    /// Exit 2: malformed input.
    Parse(String),
    /// Exit 3: well-formed input violating an operation's contract.
    Precondition(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Precondition(m) => m,
        }
    }
}

fn parse_err(e: impl std::fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}

fn pre_err(e: impl std::fmt::Display) -> CliError {
    CliError::Precondition(e.to_string())
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Clap prints its own message; usage errors exit 2, while
            // --help/--version exit 0.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Integrate(args) => cmd_integrate(&args),
        Command::SigmaGen(args) => cmd_sigma_gen(&args),
        Command::Measure(args) => cmd_measure(&args),
        Command::Tonelli(args) => cmd_tonelli(&args),
        Command::Verify(args) => return cmd_verify(&args),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

fn load_json(path: &PathBuf) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))
}

/// Effective numeric options: flag > file field > default.
fn effective_options(args: &TaskArgs, file: &Value) -> Result<(u32, Rat), CliError> {
    let n_max = args
        .n_max
        .or_else(|| file.get("n_max").and_then(Value::as_u64).map(|n| n as u32))
        .unwrap_or(20);
    let tol = match (&args.tol, file.get("tol").and_then(Value::as_str)) {
        (Some(s), _) => parse_rat(s).map_err(parse_err)?,
        (None, Some(s)) => parse_rat(s).map_err(parse_err)?,
        (None, None) => Rat::new(BigInt::one(), BigInt::one() << 16),
    };
    if !tol.is_positive() {
        return Err(CliError::Parse("tol must be positive".into()));
    }
    Ok((n_max, tol))
}

/// `p/q ~ 0.ddddd` when a decimal approximation was requested.
fn render_value(v: &XReal, decimal: Option<u32>) -> String {
    match decimal {
        None => v.to_string(),
        Some(k) => format!("{v} ~ {}", decimal_approx(v, k)),
    }
}

/// Truncated `k`-digit decimal expansion; explicitly approximate.
pub fn decimal_approx(v: &XReal, k: u32) -> String {
    let XReal::Finite(r) = v else {
        return v.to_string();
    };
    let negative = r.is_negative();
    let a = r.abs();
    let int_part = a.trunc().to_integer();
    let mut frac = a.fract();
    let mut digits = String::new();
    for _ in 0..k {
        frac *= Rat::from_integer(BigInt::from(10));
        let d = frac.trunc().to_integer();
        digits.push_str(&d.to_string());
        frac = frac.fract();
    }
    let sign = if negative { "-" } else { "" };
    if k == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{digits}")
    }
}

fn cmd_integrate(args: &TaskArgs) -> Result<(), CliError> {
    let file = load_json(&args.input)?;
    let (n_max, tol) = effective_options(args, &file)?;
    let f = parse_fn(
        file.get("fn")
            .ok_or_else(|| CliError::Parse("missing \"fn\"".into()))?,
    )
    .map_err(parse_err)?;
    let mu = parse_measure(
        file.get("measure")
            .ok_or_else(|| CliError::Parse("missing \"measure\"".into()))?,
    )
    .map_err(parse_err)?;

    if let Some(over) = file.get("over") {
        let pair = over
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| CliError::Parse("\"over\" must be [a, b]".into()))?;
        let a: XReal = pair[0]
            .as_str()
            .ok_or_else(|| CliError::Parse("bounds are strings".into()))?
            .parse()
            .map_err(parse_err)?;
        let b: XReal = pair[1]
            .as_str()
            .ok_or_else(|| CliError::Parse("bounds are strings".into()))?
            .parse()
            .map_err(parse_err)?;
        let out = integral_over_interval(&f, &a, &b, &mu, n_max, &tol).map_err(pre_err)?;
        if args.json {
            println!(
                "{}",
                json!({
                    "command": "integrate",
                    "result": {
                        "value": out.value.to_string(),
                        "exact": out.exact,
                        "bound": out.bound.as_ref().map(format_rat),
                    },
                })
            );
        } else {
            println!(
                "integral({a}..{b}) = {}{}",
                render_value(&out.value, args.decimal),
                if out.exact { " (exact)" } else { "" }
            );
        }
        return Ok(());
    }

    if f.is_nonneg() {
        let out = integral_mplus(&f, &mu, n_max, &tol).map_err(pre_err)?;
        // Inexact results are centered inside the certified window.
        let (value, half) = match (&out.exact, &out.bound, &out.value) {
            (false, Some(gap), XReal::Finite(lower)) => {
                let half = gap / Rat::from_integer(BigInt::from(2));
                (XReal::Finite(lower + &half), Some(half))
            }
            _ => (out.value.clone(), None),
        };
        if args.json {
            println!(
                "{}",
                json!({
                    "command": "integrate",
                    "result": {
                        "value": value.to_string(),
                        "exact": out.exact,
                        "bound": half.as_ref().map(format_rat),
                        "stages": out.stages.iter().map(|s| json!({
                            "n": s.n,
                            "integral": s.integral.to_string(),
                        })).collect::<Vec<_>>(),
                    },
                })
            );
        } else {
            match &half {
                Some(h) => println!(
                    "integral = {} (+/- {})",
                    render_value(&value, args.decimal),
                    format_rat(h)
                ),
                None => println!(
                    "integral = {} (exact)",
                    render_value(&value, args.decimal)
                ),
            }
            for s in &out.stages {
                println!("  stage n={:<2} integral = {}", s.n, s.integral);
            }
        }
    } else {
        let out = integral_signed(&f, &mu, n_max, &tol).map_err(pre_err)?;
        if args.json {
            println!(
                "{}",
                json!({
                    "command": "integrate",
                    "result": {
                        "value": out.value.to_string(),
                        "exact": out.exact,
                        "bound": out.bound.as_ref().map(format_rat),
                    },
                })
            );
        } else {
            println!(
                "integral = {}{}",
                render_value(&out.value, args.decimal),
                if out.exact { " (exact)" } else { "" }
            );
        }
    }
    Ok(())
}

fn cmd_sigma_gen(args: &TaskArgs) -> Result<(), CliError> {
    let file = load_json(&args.input)?;
    let universe = file
        .get("universe")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::Parse("missing integer \"universe\"".into()))?
        as usize;
    let generators = parse_family(
        universe,
        file.get("generators")
            .ok_or_else(|| CliError::Parse("missing \"generators\"".into()))?,
    )
    .map_err(parse_err)?;
    let kind = match file.get("kind").and_then(Value::as_str) {
        None | Some("sigma-algebra") => SystemKind::SigmaAlgebra,
        Some("pi-system") => SystemKind::PiSystem,
        Some("set-algebra") => SystemKind::SetAlgebra,
        Some("lambda-system") => SystemKind::LambdaSystem,
        Some("monotone-class") => SystemKind::MonotoneClass,
        Some(other) => return Err(CliError::Parse(format!("unknown kind {other:?}"))),
    };
    let family = generate(kind, &generators).map_err(pre_err)?;
    if args.json {
        println!(
            "{}",
            json!({
                "command": "sigma-gen",
                "result": family_to_json(&family),
            })
        );
    } else {
        println!("{}", family_to_json(&family));
    }
    Ok(())
}

fn cmd_measure(args: &TaskArgs) -> Result<(), CliError> {
    let file = load_json(&args.input)?;
    let mu = parse_measure(
        file.get("measure")
            .ok_or_else(|| CliError::Parse("missing \"measure\"".into()))?,
    )
    .map_err(parse_err)?;
    let size = match mu.space() {
        MeasurableSpace::Finite(fs) => Some(fs.size()),
        _ => None,
    };
    let set = parse_set(
        file.get("set")
            .ok_or_else(|| CliError::Parse("missing \"set\"".into()))?,
        size,
    )
    .map_err(parse_err)?;
    let value = mu.eval(&set).map_err(pre_err)?;
    if args.json {
        println!(
            "{}",
            json!({
                "command": "measure",
                "result": value.to_string(),
            })
        );
    } else {
        println!("measure = {}", render_value(&value, args.decimal));
    }
    Ok(())
}

fn cmd_tonelli(args: &TaskArgs) -> Result<(), CliError> {
    let file = load_json(&args.input)?;
    let mu1 = parse_measure(
        file.get("mu1")
            .ok_or_else(|| CliError::Parse("missing \"mu1\"".into()))?,
    )
    .map_err(parse_err)?;
    let mu2 = parse_measure(
        file.get("mu2")
            .ok_or_else(|| CliError::Parse("missing \"mu2\"".into()))?,
    )
    .map_err(parse_err)?;
    let fn_value = file
        .get("fn")
        .ok_or_else(|| CliError::Parse("missing \"fn\"".into()))?;
    let kind = fn_value.get("kind").and_then(Value::as_str).unwrap_or("");
    let f = if kind == "step2d" {
        TonelliFn::Step2D(parse_step2d(fn_value).map_err(parse_err)?)
    } else {
        TonelliFn::Finite(parse_fn(fn_value).map_err(parse_err)?)
    };
    let v1 = tonelli(&f, &mu1, &mu2, 1).map_err(pre_err)?;
    let v2 = tonelli(&f, &mu1, &mu2, 2).map_err(pre_err)?;
    let agree = v1.direct == v1.iterated && v2.direct == v2.iterated && v1.direct == v2.direct;
    if args.json {
        println!(
            "{}",
            json!({
                "command": "tonelli",
                "result": {
                    "direct": v1.direct.to_string(),
                    "iterated_axis1": v1.iterated.to_string(),
                    "iterated_axis2": v2.iterated.to_string(),
                    "equal": agree,
                },
            })
        );
    } else {
        println!("direct        = {}", render_value(&v1.direct, args.decimal));
        println!("iterated(i=1) = {}", render_value(&v1.iterated, args.decimal));
        println!("iterated(i=2) = {}", render_value(&v2.iterated, args.decimal));
    }
    if agree {
        Ok(())
    } else {
        Err(CliError::Precondition(
            "Tonelli identity violated; this is a kernel bug".into(),
        ))
    }
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    let tol = match parse_rat(&args.tol) {
        Ok(t) if t.is_positive() => t,
        _ => {
            eprintln!("error: --tol must be a positive rational");
            return 2;
        }
    };
    let suites: Vec<&str> = match &args.suite {
        Some(s) => vec![s.as_str()],
        None => SUITES.to_vec(),
    };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for suite in suites {
        match run_suite(suite, args.size, args.n_max, &tol) {
            Ok(report) => reports.push(report),
            Err(e) => {
                eprintln!("error: {e}");
                return 3;
            }
        }
    }
    let all_pass = reports.iter().all(|r| r.passed());
    if args.json {
        let cases: Vec<Value> = reports
            .iter()
            .flat_map(|r| {
                r.cases.iter().map(|c| {
                    json!({
                        "name": format!("{}: {}", r.suite, c.name),
                        "status": if c.pass { "pass" } else { "fail" },
                        "witness": c.witness,
                    })
                })
            })
            .collect();
        println!(
            "{}",
            json!({
                "command": "verify",
                "result": if all_pass { "pass" } else { "fail" },
                "cases": cases,
            })
        );
    } else {
        let mut total = 0usize;
        let mut passed = 0usize;
        for r in &reports {
            for c in &r.cases {
                total += 1;
                if c.pass {
                    passed += 1;
                    println!("[pass] {}: {}", r.suite, c.name);
                } else {
                    println!(
                        "[FAIL] {}: {} -- {}",
                        r.suite,
                        c.name,
                        c.witness.as_deref().unwrap_or("")
                    );
                }
            }
        }
        println!("{passed}/{total} cases pass");
    }
    if all_pass {
        0
    } else {
        1
    }
}
