//! Command-line front end: argument definitions and command dispatch.
//!
//! Data goes to `out`, diagnostics to `err`. [`run`] returns the process
//! exit code: [`EXIT_OK`], [`EXIT_VERIFY_FAILED`] or [`EXIT_USAGE`].

use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::MeaError;
use crate::generation::{decompose, generate_fast, generate_naive, RecursionDecomposition};
use crate::permutation::Permutation;
use crate::statistics::{
    classify_alternation, descent_set, inverse, inverse_recursive, inversion_count,
    inversion_formula, AlternationType, Sign, StatsReport,
};
use crate::verification::{verify_range, ClaimId, VerificationReport, DEFAULT_ORACLE_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Above this size commands still run but warn that output dominates.
pub const LARGE_N_WARNING: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "mea",
    version,
    about = "Median-extremes alternation permutations"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Plain)]
    pub format: OutputFormat,

    /// Generate with the step-by-step process simulator instead of the linear-time builder.
    #[arg(long, global = true)]
    pub naive: bool,

    /// Build inverses from the recursive description instead of positional inversion.
    #[arg(long, global = true)]
    pub recursive: bool,

    /// Largest n checked against the process simulator during `verify`.
    #[arg(long, global = true, value_name = "K")]
    pub oracle_cap: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the permutation for size n.
    Gen { n: usize },
    /// Print inversions, descents, sign, alternation type, cycle type and order.
    Stats { n: usize },
    /// One row of statistics per n in 1..=N_MAX.
    Table { n_max: usize },
    /// Check every structural claim over N_MIN..=N_MAX.
    Verify { n_min: usize, n_max: usize },
    /// Print the inverse permutation for size n.
    Inverse { n: usize },
    /// Print the prefix, child size and shift map for size n (n >= 3).
    Decompose { n: usize },
}

/// One row of `table` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub permutation: Vec<usize>,
    pub inversions: u64,
    pub inv_formula: u64,
    pub descent_count: usize,
    pub sign: Sign,
    pub alternation: AlternationType,
}

impl TableRow {
    pub fn for_mea(n: usize) -> Self {
        let p = generate_fast(n);
        let inversions = inversion_count(&p);
        TableRow {
            n,
            inversions,
            inv_formula: inversion_formula(n),
            descent_count: descent_set(&p).len(),
            sign: Sign::from_parity(inversions),
            alternation: classify_alternation(&p),
            permutation: p.into_values(),
        }
    }
}

pub const TABLE_CSV_HEADER: [&str; 7] = [
    "n",
    "permutation",
    "inversions",
    "inv_formula",
    "descent_count",
    "sign",
    "alternation",
];

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<MeaError> for Failure {
    fn from(e: MeaError) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Gen { n } => {
            warn_if_large(err, n)?;
            let p = if cli.naive {
                generate_naive(n)
            } else {
                generate_fast(n)
            };
            write_permutation(out, format, n, &p)?;
        }
        Command::Stats { n } => {
            require_positive(n, "statistics")?;
            warn_if_large(err, n)?;
            write_stats(out, format, &StatsReport::for_mea(n))?;
        }
        Command::Table { n_max } => {
            require_positive(n_max, "table")?;
            warn_if_large(err, n_max)?;
            let rows: Vec<TableRow> = (1..=n_max).map(TableRow::for_mea).collect();
            write_table(out, format, &rows)?;
        }
        Command::Verify { n_min, n_max } => {
            warn_if_large(err, n_max)?;
            let cap = cli
                .oracle_cap
                .unwrap_or_else(|| DEFAULT_ORACLE_CAP.min(n_max));
            let report = verify_range(n_min, n_max, cap)?;
            write_report(out, format, &report)?;
            if !report.passed() {
                writeln!(
                    err,
                    "verification failed: {} check(s)",
                    report.failures().count()
                )?;
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Inverse { n } => {
            require_positive(n, "inverse")?;
            warn_if_large(err, n)?;
            let q = if cli.recursive {
                inverse_recursive(n)
            } else {
                inverse(&generate_fast(n))
            };
            write_permutation(out, format, n, &q)?;
        }
        Command::Decompose { n } => {
            let d = decompose(n)?;
            write_decomposition(out, format, &d)?;
        }
    }
    Ok(EXIT_OK)
}

fn require_positive(n: usize, what: &str) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage(format!("{what} require n >= 1")));
    }
    Ok(())
}

fn warn_if_large(err: &mut dyn Write, n: usize) -> Result<(), Failure> {
    if n > LARGE_N_WARNING {
        writeln!(
            err,
            "warning: n = {n} exceeds {LARGE_N_WARNING}; output size will dominate run time"
        )?;
    }
    Ok(())
}

fn braces(xs: &[usize]) -> String {
    let items: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn brackets(xs: &[usize]) -> String {
    let items: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("[{}]", items.join(","))
}

fn spaced(xs: &[usize]) -> String {
    let items: Vec<String> = xs.iter().map(usize::to_string).collect();
    items.join(" ")
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_permutation(
    out: &mut dyn Write,
    format: OutputFormat,
    n: usize,
    p: &Permutation,
) -> Result<(), Failure> {
    match format {
        OutputFormat::Plain => writeln!(out, "{p}")?,
        OutputFormat::Json => write_json(out, p)?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "permutation"])?;
            w.write_record([n.to_string(), p.to_spaced_string()])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn write_stats(out: &mut dyn Write, format: OutputFormat, r: &StatsReport) -> Result<(), Failure> {
    match format {
        OutputFormat::Plain => {
            writeln!(out, "n: {}", r.n)?;
            writeln!(out, "permutation: {}", brackets(&r.values))?;
            writeln!(out, "inversions: {}", r.inversions)?;
            writeln!(out, "descents: {}", braces(&r.descents))?;
            writeln!(out, "sign: {}", r.sign)?;
            writeln!(out, "alternation: {}", r.alternation)?;
            writeln!(out, "cycle_type: {}", brackets(&r.cycle_type))?;
            writeln!(out, "order: {}", r.order)?;
        }
        OutputFormat::Json => write_json(out, r)?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "n",
                "permutation",
                "inversions",
                "descents",
                "sign",
                "alternation",
                "cycle_type",
                "order",
            ])?;
            w.write_record([
                r.n.to_string(),
                spaced(&r.values),
                r.inversions.to_string(),
                spaced(&r.descents),
                r.sign.value().to_string(),
                r.alternation.to_string(),
                spaced(&r.cycle_type),
                r.order.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn write_table(
    out: &mut dyn Write,
    format: OutputFormat,
    rows: &[TableRow],
) -> Result<(), Failure> {
    match format {
        OutputFormat::Plain => {
            let cells: Vec<[String; 7]> = rows
                .iter()
                .map(|r| {
                    [
                        r.n.to_string(),
                        brackets(&r.permutation),
                        r.inversions.to_string(),
                        r.inv_formula.to_string(),
                        r.descent_count.to_string(),
                        r.sign.to_string(),
                        r.alternation.to_string(),
                    ]
                })
                .collect();
            let mut widths = TABLE_CSV_HEADER.map(str::len);
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            let header = TABLE_CSV_HEADER.map(String::from);
            for row in std::iter::once(&header).chain(&cells) {
                let line: Vec<String> = row
                    .iter()
                    .zip(widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                writeln!(out, "{}", line.join("  ").trim_end())?;
            }
        }
        OutputFormat::Json => write_json(out, &rows)?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(TABLE_CSV_HEADER)?;
            for r in rows {
                w.write_record([
                    r.n.to_string(),
                    spaced(&r.permutation),
                    r.inversions.to_string(),
                    r.inv_formula.to_string(),
                    r.descent_count.to_string(),
                    r.sign.value().to_string(),
                    r.alternation.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn write_report(
    out: &mut dyn Write,
    format: OutputFormat,
    report: &VerificationReport,
) -> Result<(), Failure> {
    match format {
        OutputFormat::Plain => {
            writeln!(
                out,
                "range: {}..={}  oracle cap: {}",
                report.n_min, report.n_max, report.oracle_cap
            )?;
            for claim in ClaimId::ALL {
                let s = report.summary.get(&claim).copied().unwrap_or_default();
                let total = s.passed + s.failed;
                let status = if s.failed == 0 { "pass" } else { "FAIL" };
                writeln!(out, "{:<12} {status}  {}/{total}", claim.as_str(), s.passed)?;
            }
            for c in report.failures() {
                writeln!(out, "FAIL {} n={}: {}", c.claim, c.n, c.detail)?;
            }
            writeln!(out, "status: {}", report.status.as_str())?;
        }
        OutputFormat::Json => write_json(out, report)?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["claim", "n", "status", "detail"])?;
            for c in &report.checks {
                w.write_record([
                    c.claim.as_str(),
                    &c.n.to_string(),
                    c.status.as_str(),
                    &c.detail,
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn write_decomposition(
    out: &mut dyn Write,
    format: OutputFormat,
    d: &RecursionDecomposition,
) -> Result<(), Failure> {
    let parity = match d.parity {
        crate::generation::Parity::Odd => "odd",
        crate::generation::Parity::Even => "even",
    };
    let map = d.shift_map;
    match format {
        OutputFormat::Plain => {
            writeln!(out, "n: {}", d.n)?;
            writeln!(out, "parity: {parity}")?;
            writeln!(out, "prefix: {}", brackets(&d.prefix))?;
            writeln!(out, "child_n: {}", d.child_n)?;
            writeln!(
                out,
                "shift_map: r <= {} -> r+{}, r >= {} -> r+{}",
                map.threshold,
                map.low_offset,
                map.threshold + 1,
                map.high_offset
            )?;
        }
        OutputFormat::Json => write_json(out, d)?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "n",
                "parity",
                "prefix",
                "child_n",
                "threshold",
                "low_offset",
                "high_offset",
            ])?;
            w.write_record([
                d.n.to_string(),
                parity.to_string(),
                spaced(&d.prefix),
                d.child_n.to_string(),
                map.threshold.to_string(),
                map.low_offset.to_string(),
                map.high_offset.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let cli = Cli::try_parse_from(std::iter::once("mea").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&cli, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn gen_plain() {
        assert_eq!(run_args(&["gen", "6"]).1, "[3,4,1,6,2,5]\n");
        assert_eq!(run_args(&["gen", "0"]).1, "[]\n");
        assert_eq!(run_args(&["gen", "9"]).1, "[5,1,9,4,6,2,8,3,7]\n");
        assert_eq!(
            run_args(&["gen", "9", "--naive"]).1,
            "[5,1,9,4,6,2,8,3,7]\n"
        );
    }

    #[test]
    fn stats_zero_is_usage_error() {
        let (code, out, err) = run_args(&["stats", "0"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("n >= 1"));
    }

    #[test]
    fn stats_plain() {
        let (code, out, _) = run_args(&["stats", "5"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(
            out,
            "n: 5\npermutation: [3,1,5,2,4]\ninversions: 4\ndescents: {1,3}\nsign: +1\n\
             alternation: down_up\ncycle_type: [5]\norder: 5\n"
        );
    }

    #[test]
    fn decompose_plain_and_error() {
        let (_, out, _) = run_args(&["decompose", "8"]);
        assert_eq!(
            out,
            "n: 8\nparity: even\nprefix: [4,5,1,8]\nchild_n: 4\nshift_map: r <= 2 -> r+1, r >= 3 -> r+3\n"
        );
        assert_eq!(run_args(&["decompose", "2"]).0, EXIT_USAGE);
    }

    #[test]
    fn verify_bad_range_is_usage_error() {
        assert_eq!(run_args(&["verify", "5", "2"]).0, EXIT_USAGE);
        assert_eq!(
            run_args(&["verify", "1", "5", "--oracle-cap", "9"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn large_n_warns_on_stderr() {
        // n_min = 0 fails fast, after the size warning has been emitted.
        let (code, _, err) = run_args(&["verify", "0", "20000000"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.starts_with("warning: n = 20000000"), "{err}");
    }
}
