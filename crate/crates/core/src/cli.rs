//! The `ncl` command line: compute variables, run the verification suite,
//! list paths, expand continued fractions, tabulate sizes.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 index out
//! of range, 4 enumeration budget exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::dynamics::{finite_type_probe, trajectory_range, CaseTag, Trajectory};
use crate::error::Error;
use crate::ncpoly::{NCPoly, DEFAULT_SUPPORT_ROUNDS};
use crate::pathmodel::{build_model, cluster_series, enumerate_paths, steps_per_index, DEFAULT_BUDGET};
use crate::verify::{full_suite_with, Fault, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RANGE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Largest `|n|` served for `(2,2)`; `R_16` already has about 1.3 million terms.
pub const MAX_INDEX_22: i64 = 16;
/// Largest `|n|` served for `(1,4)` and `(4,1)`.
pub const MAX_INDEX_14: i64 = 10;

/// Environment variable overriding the enumeration budget.
pub const BUDGET_ENV: &str = "NCL_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "ncl", version, about = "Noncommutative rank-2 cluster recursions, exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    /// Bump one coefficient of R_4.
    Flip,
    /// Use a wrong conserved quantity K.
    WrongK,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print R_n (or u_n) for one index or a range.
    Compute {
        #[arg(long, default_value = "22", value_parser = parse_case)]
        case: CaseTag,
        /// Index, or first index of a range when --to is given. May be negative.
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Last index of the range.
        #[arg(long, allow_negative_numbers = true)]
        to: Option<i64>,
        /// Print u_n instead of R_n.
        #[arg(long)]
        u: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run every identity and oracle check to the given depth.
    Verify {
        #[arg(long, default_value_t = 8)]
        nmax: u32,
        /// Corrupt the (2,2) trajectory to show the suite can fail.
        #[arg(long, value_enum, num_args = 0..=1, default_missing_value = "flip")]
        inject_fault: Option<FaultArg>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List the closed paths of a given number of steps and their weights.
    Paths {
        #[arg(long, default_value = "22", value_parser = parse_case)]
        case: CaseTag,
        #[arg(long)]
        len: usize,
        /// Maximum number of paths; NCL_BUDGET overrides it.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Expand the continued fraction times the base to a given order.
    Series {
        #[arg(long, default_value = "22", value_parser = parse_case)]
        case: CaseTag,
        #[arg(long, default_value_t = 5)]
        order: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Term counts, largest coefficients and degree spans.
    Stats {
        #[arg(long, default_value = "22", value_parser = parse_case)]
        case: CaseTag,
        #[arg(long, default_value_t = 8)]
        nmax: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Experimental: the finite types (1,c), c <= 3, by right division.
    Probe {
        #[arg(long, default_value_t = 1)]
        c: u32,
        #[arg(long, default_value_t = 12)]
        nmax: i64,
        #[arg(long, default_value_t = DEFAULT_SUPPORT_ROUNDS)]
        support_rounds: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_case(s: &str) -> Result<CaseTag, String> {
    s.parse::<CaseTag>()
        .map_err(|_| format!("expected one of 22, 14xy, 14XY, 41xy, 41XY; got {s}"))
}

/// Parses `args` (including the program name) and runs the command,
/// writing to stdout unless `--output` is given. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(args, &mut out, &mut err)
}

/// [`run`] with explicit sinks.
pub fn run_with<I, T>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let budget_env = std::env::var(BUDGET_ENV).ok();
    match execute(&cli.command, budget_env.as_deref()) {
        Ok(Outcome { text, code, output }) => match output {
            Some(path) => match std::fs::write(path, &text) {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(err, "ncl: cannot write {}: {e}", path.display());
                    EXIT_USAGE
                }
            },
            None => {
                let _ = out.write_all(text.as_bytes());
                code
            }
        },
        Err((code, msg)) => {
            let _ = writeln!(err, "ncl: {msg}");
            code
        }
    }
}

/// Rendered output of a command.
pub struct Outcome<'a> {
    pub text: String,
    pub code: i32,
    pub output: Option<&'a PathBuf>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::IndexUnavailable(_) => EXIT_RANGE,
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn fail(e: Error) -> (i32, String) {
    (exit_code(&e), e.to_string())
}

fn max_index(case: CaseTag) -> i64 {
    match case {
        CaseTag::B22 => MAX_INDEX_22,
        _ => MAX_INDEX_14,
    }
}

/// Runs a parsed command. `budget_env` is the value of `NCL_BUDGET`, if set.
pub fn execute<'a>(cmd: &'a Command, budget_env: Option<&str>) -> Result<Outcome<'a>, (i32, String)> {
    match cmd {
        Command::Compute {
            case,
            n,
            to,
            u,
            format,
            output,
        } => {
            let (lo, hi) = (*n, to.unwrap_or(*n));
            if hi < lo {
                return Err((EXIT_USAGE, format!("empty range {lo}..={hi}")));
            }
            let text = compute(*case, lo, hi, *u, *format).map_err(fail)?;
            Ok(Outcome {
                text,
                code: EXIT_OK,
                output: output.as_ref(),
            })
        }
        Command::Verify {
            nmax,
            inject_fault,
            budget,
            format,
            output,
        } => {
            let mut cfg = SuiteConfig::new(*nmax);
            cfg.budget = resolve_budget(*budget, budget_env)?;
            cfg.fault = inject_fault.map(|f| match f {
                FaultArg::Flip => Fault::FlippedCoefficient,
                FaultArg::WrongK => Fault::WrongConserved,
            });
            let report = full_suite_with(&cfg);
            let text = match format {
                Format::Text => report.to_text(),
                Format::Json => pretty(&report.to_json()),
            };
            Ok(Outcome {
                text,
                code: if report.overall() { EXIT_OK } else { EXIT_VERIFY_FAILED },
                output: output.as_ref(),
            })
        }
        Command::Paths {
            case,
            len,
            budget,
            format,
            output,
        } => {
            let budget = resolve_budget(*budget, budget_env)?;
            let text = paths(*case, *len, budget, *format).map_err(fail)?;
            Ok(Outcome {
                text,
                code: EXIT_OK,
                output: output.as_ref(),
            })
        }
        Command::Series {
            case,
            order,
            format,
            output,
        } => {
            let text = series(*case, *order, *format).map_err(fail)?;
            Ok(Outcome {
                text,
                code: EXIT_OK,
                output: output.as_ref(),
            })
        }
        Command::Stats {
            case,
            nmax,
            format,
            output,
        } => {
            if *nmax < 0 {
                return Err((EXIT_USAGE, "--nmax must be nonnegative".into()));
            }
            let text = stats(*case, *nmax, *format).map_err(fail)?;
            Ok(Outcome {
                text,
                code: EXIT_OK,
                output: output.as_ref(),
            })
        }
        Command::Probe {
            c,
            nmax,
            support_rounds,
            format,
            output,
        } => {
            let probe = finite_type_probe(1, *c, *nmax, *support_rounds).map_err(fail)?;
            let text = match format {
                Format::Text => {
                    let mut s = String::new();
                    for (n, v) in &probe.variables {
                        let _ = writeln!(s, "R[{n}] = {v}");
                    }
                    s + &probe.report.to_text()
                }
                Format::Json => pretty(&json!({
                    "b": probe.b,
                    "c": probe.c,
                    "variables": probe.variables.iter()
                        .map(|(n, v)| json!({"n": n, "terms": v.to_json_value()}))
                        .collect::<Vec<_>>(),
                    "abelian_period": probe.abelian_period,
                    "conjugation_period": probe.conjugation_period,
                    "report": probe.report.to_json(),
                })),
            };
            Ok(Outcome {
                text,
                code: EXIT_OK,
                output: output.as_ref(),
            })
        }
    }
}

fn resolve_budget(flag: u64, env: Option<&str>) -> Result<u64, (i32, String)> {
    let budget = match env {
        Some(v) => v
            .trim()
            .parse::<u64>()
            .map_err(|_| (EXIT_USAGE, format!("{BUDGET_ENV}={v} is not a count")))?,
        None => flag,
    };
    if budget == 0 {
        return Err((EXIT_USAGE, "budget must be positive".into()));
    }
    Ok(budget)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

fn variable(traj: &Trajectory, n: i64, u: bool) -> crate::error::Result<&NCPoly> {
    if u {
        traj.u(n)
    } else {
        traj.r(n)
    }
}

/// `R_n` (or `u_n`) for `lo..=hi`. A single index prints the bare polynomial
/// so it re-parses; a range prints `R[n] = ...` lines.
pub fn compute(case: CaseTag, lo: i64, hi: i64, u: bool, format: Format) -> crate::error::Result<String> {
    if u && case == CaseTag::B22 {
        return Err(Error::UnsupportedCase("the (2,2) system has no u variables".into()));
    }
    // u_m sits at R_{2m + offset}, |offset| <= 1
    let (rlo, rhi) = if u { (2 * lo - 1, 2 * hi + 1) } else { (lo, hi) };
    let cap = max_index(case);
    for n in [rlo, rhi] {
        if n.abs() > cap + i64::from(u) {
            return Err(Error::IndexUnavailable(n));
        }
    }
    let traj = trajectory_range(case, rlo.max(-cap), rhi.min(cap))?;
    let name = if u { "u" } else { "R" };
    let values = (lo..=hi)
        .map(|n| variable(&traj, n, u).map(|v| (n, v)))
        .collect::<crate::error::Result<Vec<_>>>()?;
    Ok(match format {
        Format::Text if lo == hi => format!("{}\n", values[0].1),
        Format::Text => values
            .iter()
            .map(|(n, v)| format!("{name}[{n}] = {v}\n"))
            .collect(),
        Format::Json => pretty(&json!({
            "case": case.label(),
            "variable": name,
            "values": values.iter()
                .map(|(n, v)| json!({"n": n, "terms": v.to_json_value()}))
                .collect::<Vec<_>>(),
        })),
    })
}

/// Every closed path of `len` steps, then a footer with the count and the
/// summed partition function.
pub fn paths(case: CaseTag, len: usize, budget: u64, format: Format) -> crate::error::Result<String> {
    let model = build_model(case)?;
    let list = enumerate_paths(&model, len, budget)?;
    let mut total = NCPoly::zero();
    for path in &list {
        total += &path.weight;
    }
    Ok(match format {
        Format::Text => {
            let mut s = String::new();
            for path in &list {
                let _ = writeln!(s, "{path}");
            }
            let _ = writeln!(s, "count: {}", list.len());
            let _ = writeln!(s, "partition function: {total}");
            s
        }
        Format::Json => pretty(&json!({
            "case": case.label(),
            "steps": len,
            "paths": list.iter().map(|p| json!({
                "vertices": p.vertices,
                "label": p.label(),
                "weight": p.weight.to_json_value(),
            })).collect::<Vec<_>>(),
            "count": list.len(),
            "partition_function": total.to_json_value(),
        })),
    })
}

/// Coefficients of the continued fraction times the base.
pub fn series(case: CaseTag, order: usize, format: Format) -> crate::error::Result<String> {
    let model = build_model(case)?;
    let s = cluster_series(&model, order)?;
    Ok(match format {
        Format::Text => s
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| format!("t^{k}: {c}\n"))
            .collect(),
        Format::Json => pretty(&json!({
            "case": case.label(),
            "steps_per_power": steps_per_index(&model),
            "coefficients": s.coeffs.iter().map(NCPoly::to_json_value).collect::<Vec<_>>(),
        })),
    })
}

/// One row per index: term count, largest coefficient, x and y exponent spans.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StatsRow {
    pub n: i64,
    pub terms: usize,
    pub max_coeff: String,
    pub x_span: (i64, i64),
    pub y_span: (i64, i64),
}

pub fn stats_rows(case: CaseTag, n_max: i64) -> crate::error::Result<Vec<StatsRow>> {
    if n_max > max_index(case) {
        return Err(Error::IndexUnavailable(n_max));
    }
    let traj = trajectory_range(case, 0, n_max)?;
    (0..=n_max)
        .map(|n| {
            let v = traj.r(n)?;
            let exps: Vec<(i64, i64)> = v.support().map(|w| w.exponent_sums()).collect();
            let span = |f: fn(&(i64, i64)) -> i64| {
                let lo = exps.iter().map(f).min().unwrap_or(0);
                let hi = exps.iter().map(f).max().unwrap_or(0);
                (lo, hi)
            };
            Ok(StatsRow {
                n,
                terms: v.len(),
                max_coeff: v.max_abs_coeff().to_string(),
                x_span: span(|e| e.0),
                y_span: span(|e| e.1),
            })
        })
        .collect()
}

pub fn stats(case: CaseTag, n_max: i64, format: Format) -> crate::error::Result<String> {
    let rows = stats_rows(case, n_max)?;
    Ok(match format {
        Format::Text => {
            let mut s = format!("{:>4} {:>10} {:>10} {:>12} {:>12}\n", "n", "terms", "max coeff", "x span", "y span");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:>4} {:>10} {:>10} {:>12} {:>12}",
                    r.n,
                    r.terms,
                    r.max_coeff,
                    format!("{}..{}", r.x_span.0, r.x_span.1),
                    format!("{}..{}", r.y_span.0, r.y_span.1),
                );
            }
            s
        }
        Format::Json => pretty(&json!({ "case": case.label(), "rows": rows })),
    })
}
