//! The `qtorus` command line.
//!
//! ```text
//! qtorus element <family> [index] [--route definitional|closed] [--format text|json]
//! qtorus series <theta|theta-prime|h|h-prime> --order N [--format text|json]
//! qtorus verify [--suite NAME]... [--max N] [--range LO..HI] [--jobs K] [--format text|json]
//! ```
//!
//! Exit codes: 0 success, 1 some identity failed, 2 usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::elements::{Builder, Family, FamilyTag, Route, Which};
use crate::series::{theta_prime_series, theta_series, TruncatedSeries};
use crate::verify::{run_suites, Suite, SuiteRequest};
use crate::{Error, QHalf};

/// Environment variable supplying the default `--max` for `verify`.
pub const MAX_ENV: &str = "QTORUS_MAX";

#[derive(Debug, Parser)]
#[command(
    name = "qtorus",
    version,
    about = "Exact identity checks in the quantum torus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesName {
    Theta,
    ThetaPrime,
    H,
    HPrime,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print one element in the standard basis.
    Element {
        /// b-delta, b-alpha0, b-alpha1, b-ndelta, b1r, theta-prime, theta,
        /// h-prime, h, w0 or w1
        family: String,
        #[arg(allow_negative_numbers = true)]
        index: Option<i64>,
        /// definitional (alias recursive, series) or closed
        #[arg(long, default_value = "definitional")]
        route: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the coefficients of a generating function.
    Series {
        #[arg(value_enum)]
        name: SeriesName,
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run identity suites.
    Verify {
        /// Suite to run; repeat for several. Default: all.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Main bound of every selected suite (closed-forms maxN, series
        /// order, root-relations/z-forms maxM, commutation maxN).
        #[arg(long)]
        max: Option<i64>,
        /// r, s range for root-relations and z-forms, e.g. -3..3
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        range: Option<(i64, i64)>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("range `{s}` is not of the form LO..HI"))?;
    let lo = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad range start `{lo}`"))?;
    let hi = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad range end `{hi}`"))?;
    Ok((lo, hi))
}

/// Runs the command line and returns the exit code. Normal output goes to
/// `out`, diagnostics to `err`. `env_max` is the value of [`MAX_ENV`].
pub fn run<I, T>(args: I, env_max: Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Element {
            family,
            index,
            route,
            format,
        } => element(&family, index, &route, format, out).map(|()| 0),
        Command::Series {
            name,
            order,
            format,
        } => series(name, order, format, out).map(|()| 0),
        Command::Verify {
            suites,
            max,
            range,
            jobs,
            format,
        } => verify(&suites, max, range, jobs, format, env_max, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "qtorus: {e}");
            2
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Usage(format!("cannot write output: {e}"))
}

fn element(
    family: &str,
    index: Option<i64>,
    route: &str,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Error> {
    let family: Family = family.parse()?;
    let route: Route = route.parse()?;
    let index = match (family.is_fixed(), index) {
        (true, None) => 0,
        (false, None) => return Err(Error::Usage(format!("{family} needs an index"))),
        (_, Some(i)) => i,
    };
    let tag = FamilyTag::new(family, index)?;
    let order = (index.max(0) as usize).max(crate::elements::DEFAULT_SERIES_ORDER);
    let e = Builder::with_series_order(order).build(tag, route)?;
    match format {
        Format::Text => writeln!(out, "{e}"),
        Format::Json => writeln!(
            out,
            "{}",
            json!({ "family": tag.family.tag_name(), "index": tag.index, "element": e.to_json() })
        ),
    }
    .map_err(io)
}

fn series(
    name: SeriesName,
    order: usize,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Error> {
    let s: TruncatedSeries = match name {
        SeriesName::Theta => theta_series(order),
        SeriesName::ThetaPrime => theta_prime_series(order),
        SeriesName::H | SeriesName::HPrime => {
            let which = if name == SeriesName::H {
                Which::Plain
            } else {
                Which::Prime
            };
            let theta = match which {
                Which::Plain => theta_series(order),
                Which::Prime => theta_prime_series(order),
            };
            theta.log()?.scale(&QHalf::q_minus_inv().inv()?)
        }
    };
    match format {
        Format::Text => writeln!(out, "{s}"),
        Format::Json => writeln!(out, "{}", s.to_json()),
    }
    .map_err(io)
}

fn verify(
    names: &[String],
    max: Option<i64>,
    range: Option<(i64, i64)>,
    jobs: usize,
    format: Format,
    env_max: Option<String>,
    out: &mut dyn Write,
) -> Result<i32, Error> {
    let suites: Vec<Suite> = if names.is_empty() {
        Suite::ALL.to_vec()
    } else {
        names.iter().map(|n| n.parse()).collect::<Result<_, _>>()?
    };
    let env_value = match (&max, env_max) {
        (None, Some(v)) => Some(
            v.trim()
                .parse::<i64>()
                .map_err(|_| Error::Usage(format!("{MAX_ENV}=`{v}` is not an integer")))?,
        ),
        _ => None,
    };
    let max = max.or(env_value);
    let requests = suites
        .iter()
        .map(|&s| SuiteRequest::new(s, max, range))
        .collect::<Result<Vec<_>, _>>()?;
    let reports = run_suites(&requests, jobs);
    let all_pass = reports.iter().all(|r| r.passed());
    let header = json!({
        "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
        "max": max,
        "max_from_env": env_value.map(|v| format!("{MAX_ENV}={v}")),
        "range": range.map(|(lo, hi)| format!("{lo}..{hi}")),
        "jobs": jobs,
    });
    match format {
        Format::Text => {
            if let Some(v) = env_value {
                writeln!(out, "default max from {MAX_ENV}={v}").map_err(io)?;
            }
            for r in &reports {
                writeln!(out, "{r}").map_err(io)?;
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            writeln!(out, "{passed}/{} suites passed", reports.len()).map_err(io)?;
        }
        Format::Json => {
            let body = json!({
                "header": header,
                "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&body).expect("valid JSON")
            )
            .map_err(io)?;
        }
    }
    Ok(if all_pass { 0 } else { 1 })
}
