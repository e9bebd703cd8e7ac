//! The `euler` command-line tool.
//!
//! [`run`] takes the argument list and a stdin reader and returns the exit
//! code with everything destined for stdout and stderr, so the binary is a
//! thin wrapper and tests can drive commands in-process.
//!
//! Exit codes: `0` success, `1` verification failure, `2` usage, parse or
//! domain errors.

pub mod lcg;
pub mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::BufRead;
use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use euler_core::words::{enumerate_words, is_lyndon, lyndon_count};
use euler_core::{
    parse_element, AlgebraElement, CyclotomicNumber, EulerAlgebra, HarmonicEvaluator, Lexicographic, SumKind,
};
use serde_json::{json, Value};

use crate::verify::{Suite, VerifyConfig, VerifyReport};

#[derive(Debug, Parser)]
#[command(name = "euler", version, about = "Quasi-shuffle algebra and harmonic-sum calculator")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Root-of-unity order; falls back to EULER_DEFAULT_R.
    #[arg(long, global = true, env = "EULER_DEFAULT_R", value_parser = clap::value_parser!(u32).range(1..))]
    pub r: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Fractional decimal digits in approximations.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=10_000))]
    pub digits: u32,
    /// Read expressions from stdin, one per line, after any given inline.
    #[arg(long, global = true)]
    pub stdin: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quasi-shuffle product of two expressions.
    Mul { exprs: Vec<String> },
    /// Deconcatenation coproduct.
    Coproduct { exprs: Vec<String> },
    /// Hopf antipode.
    Antipode { exprs: Vec<String> },
    /// Sum of all coarsenings of each word.
    Overline { exprs: Vec<String> },
    /// Word reversal.
    Reverse { exprs: Vec<String> },
    /// Exact harmonic sums; a linear combination evaluates term by term.
    Eval {
        #[arg(long, default_value = "A")]
        kind: SumKind,
        /// A single n or an inclusive range `lo..hi`.
        #[arg(long)]
        n: NRange,
        exprs: Vec<String>,
    },
    /// Lyndon words of a given degree.
    Lyndon {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
        degree: u32,
    },
    /// Check the algebraic identities over enumerated and seeded inputs.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(0..=10))]
        max_length: u32,
        #[arg(long, default_value_t = 8)]
        max_n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Mul { .. } => "mul",
            Command::Coproduct { .. } => "coproduct",
            Command::Antipode { .. } => "antipode",
            Command::Overline { .. } => "overline",
            Command::Reverse { .. } => "reverse",
            Command::Eval { .. } => "eval",
            Command::Lyndon { .. } => "lyndon",
            Command::Verify { .. } => "verify",
        }
    }
}

/// `n` or `lo..hi`, both ends inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NRange(pub RangeInclusive<u64>);

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("`{t}`: {e}"));
        match s.split_once("..") {
            None => num(s).map(|n| NRange(n..=n)),
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
                if lo > hi {
                    return Err(format!("empty range {lo}..{hi}"));
                }
                Ok(NRange(lo..=hi))
            }
        }
    }
}

/// Exit code plus captured output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn success(stdout: String) -> Self {
        Output { code: 0, stdout, stderr: String::new() }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Output { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] euler_core::Error),
    #[error("in expression `{text}`: {source}")]
    Expression { text: String, source: euler_core::Error },
}

type CliResult<T> = Result<T, CliError>;

pub fn run<I, T>(args: I, stdin: &mut dyn BufRead) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output::success(text)
            };
        }
    };
    match execute(&cli, stdin) {
        Ok(out) => out,
        Err(e) => Output::usage(e),
    }
}

fn execute(cli: &Cli, stdin: &mut dyn BufRead) -> CliResult<Output> {
    let common = &cli.common;
    let r = common
        .r
        .ok_or_else(|| CliError::Usage("--r is required (or set EULER_DEFAULT_R)".into()))?;
    let name = cli.command.name();
    if common.format == Format::Csv && !matches!(cli.command, Command::Eval { .. }) {
        return Err(CliError::Usage("--format csv is only available for eval".into()));
    }
    match &cli.command {
        Command::Mul { exprs } => {
            let [x, y] = expressions::<2>(exprs, common.stdin, stdin, r)?;
            let alg = EulerAlgebra::new(r)?;
            Ok(algebra_output(name, r, common.format, alg.star(&x, &y)?.to_string()))
        }
        Command::Coproduct { exprs } => {
            let [x] = expressions::<1>(exprs, common.stdin, stdin, r)?;
            let alg = EulerAlgebra::new(r)?;
            Ok(algebra_output(name, r, common.format, alg.coproduct(&x)?.to_string()))
        }
        Command::Antipode { exprs } => {
            let [x] = expressions::<1>(exprs, common.stdin, stdin, r)?;
            let alg = EulerAlgebra::new(r)?;
            Ok(algebra_output(name, r, common.format, alg.antipode(&x)?.to_string()))
        }
        Command::Overline { exprs } => {
            let [x] = expressions::<1>(exprs, common.stdin, stdin, r)?;
            let alg = EulerAlgebra::new(r)?;
            Ok(algebra_output(name, r, common.format, alg.expand_overline(&x)?.to_string()))
        }
        Command::Reverse { exprs } => {
            let [x] = expressions::<1>(exprs, common.stdin, stdin, r)?;
            let alg = EulerAlgebra::new(r)?;
            Ok(algebra_output(name, r, common.format, alg.reverse(&x)?.to_string()))
        }
        Command::Eval { kind, n, exprs } => {
            let [x] = expressions::<1>(exprs, common.stdin, stdin, r)?;
            eval(r, *kind, n.0.clone(), &x, common)
        }
        Command::Lyndon { degree } => lyndon(r, *degree, common.format),
        Command::Verify { suite, max_degree, max_length, max_n, seed } => {
            let cfg = VerifyConfig {
                r,
                max_degree: *max_degree,
                max_length: *max_length as usize,
                max_n: *max_n,
                seed: *seed,
            };
            let report = verify::verify(*suite, &cfg)?;
            Ok(report_output(&report, common.format))
        }
    }
}

/// Inline expressions followed by stdin lines; exactly `N` in total.
fn expressions<const N: usize>(
    inline: &[String],
    use_stdin: bool,
    stdin: &mut dyn BufRead,
    r: u32,
) -> CliResult<[AlgebraElement; N]> {
    let mut texts = inline.to_vec();
    if use_stdin {
        for line in stdin.lines() {
            let line = line.map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
            if !line.trim().is_empty() {
                texts.push(line.trim().to_string());
            }
        }
    }
    if texts.len() != N {
        let noun = if N == 1 { "expression" } else { "expressions" };
        return Err(CliError::Usage(format!("expected {N} {noun}, got {}", texts.len())));
    }
    let parsed = texts
        .into_iter()
        .map(|text| parse_element(&text, r).map_err(|source| CliError::Expression { text, source }))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(parsed.try_into().expect("length checked above"))
}

fn algebra_output(command: &str, r: u32, format: Format, exact: String) -> Output {
    match format {
        Format::Json => {
            let doc = json!({"command": command, "r": r, "result": {"exact": exact, "approx": Value::Null}});
            Output::success(format!("{doc}\n"))
        }
        _ => Output::success(format!("{exact}\n")),
    }
}

fn eval(r: u32, kind: SumKind, ns: RangeInclusive<u64>, x: &AlgebraElement, common: &Common) -> CliResult<Output> {
    let ev = HarmonicEvaluator::new(r)?;
    let label = x.to_string();
    let single = ns.start() == ns.end();
    let mut rows: Vec<(u64, CyclotomicNumber)> = Vec::new();
    for n in ns {
        let value = match kind {
            SumKind::A => ev.rho(x, n)?,
            SumKind::S => ev.rho_overline(x, n)?,
        };
        rows.push((n, value));
    }
    let mut out = String::new();
    match common.format {
        Format::Text => {
            for (n, v) in &rows {
                let approx = v.approximate(common.digits);
                if single {
                    let _ = writeln!(out, "{v}\n≈ {approx}");
                } else {
                    let _ = writeln!(out, "n={n}\t{v}\t≈ {approx}");
                }
            }
        }
        Format::Json => {
            for (n, v) in &rows {
                let approx = v.approximate(common.digits);
                let doc = json!({
                    "command": "eval",
                    "r": r,
                    "result": {
                        "word": label,
                        "n": n,
                        "kind": kind.to_string(),
                        "exact": v.to_string(),
                        "approx": {"re": approx.re, "im": approx.im},
                    },
                });
                let _ = writeln!(out, "{doc}");
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| CliError::Usage(format!("writing csv: {e}"));
            w.write_record(["word", "n", "kind", "exact", "re", "im"]).map_err(csv_err)?;
            for (n, v) in &rows {
                let approx = v.approximate(common.digits);
                w.write_record([label.clone(), n.to_string(), kind.to_string(), v.to_string(), approx.re, approx.im])
                    .map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("writing csv: {e}")))?;
            out = String::from_utf8(bytes).expect("csv output is utf-8");
        }
    }
    Ok(Output::success(out))
}


fn lyndon(r: u32, degree: u32, format: Format) -> CliResult<Output> {
    let words: Vec<_> = enumerate_words(degree, r)?
        .into_iter()
        .filter(|w| is_lyndon(w, &Lexicographic).unwrap_or(false))
        .collect();
    let formula = lyndon_count(degree, r)?;
    let out = match format {
        Format::Json => {
            let list: Vec<String> = words.iter().map(ToString::to_string).collect();
            let doc = json!({
                "command": "lyndon",
                "r": r,
                "result": {"degree": degree, "count": words.len(), "formula": formula.to_string(), "words": list},
            });
            format!("{doc}\n")
        }
        _ => {
            let mut s = format!("count: {}\nformula: {formula}\n", words.len());
            for w in &words {
                let _ = writeln!(s, "{w}");
            }
            s
        }
    };
    Ok(Output::success(out))
}

/// Renders a report. Wall time goes to stderr so stdout stays reproducible.
pub fn report_output(report: &VerifyReport, format: Format) -> Output {
    let stdout = match format {
        Format::Json => {
            let doc = json!({"command": "verify", "r": report.config.r, "result": report.to_json()});
            format!("{doc}\n")
        }
        _ => report.to_text(),
    };
    Output {
        code: report.exit_code(),
        stdout,
        stderr: format!(
            "{} cases in {:.3} s\n",
            report.cases(),
            report.wall_time.as_secs_f64()
        ),
    }
}
