//! Command-line front end: argument parsing, output formats and exit codes.
//!
//! Exit codes: 0 success, 1 a verification suite found a discrepancy,
//! 2 invalid arguments, 3 a resource guard refused the computation.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::free::{dims, PLieQuery};
use crate::guard::Guard;
use crate::sequences::{AdmissibleSeq, Variant};
use crate::series::DegreeWindow;
use crate::verify::{self, Level, Suite, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "plie", version, about = "Bases and dimensions of free partition Lie algebras over F_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate dim π_t of the free algebra by weight and degree.
    Dims(DimsArgs),
    /// Run an identity suite and report discrepancies.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Ceiling on n for partition-complex constructions.
    #[arg(long = "guard-n")]
    pub guard_n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[arg(long, value_parser = parse_variant)]
    pub variant: Variant,
    #[arg(long)]
    pub p: u64,
    /// Generator degrees, comma separated (e.g. -1,-2).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub gens: Vec<i64>,
    #[arg(long = "max-weight")]
    pub max_weight: u64,
    /// Degree window LO:HI, inclusive.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
    pub window: DegreeWindow,
    /// Include basis labels.
    #[arg(long)]
    pub basis: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: SuiteArg,
    #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
    pub level: LevelArg,
    /// Print the full report as JSON.
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Homology,
    Oracle,
    Euler,
    HiltonMilnor,
    Ehp,
    Stabilizer,
    Lyndon,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// `LO:HI`, both inclusive.
pub fn parse_window(s: &str) -> Result<DegreeWindow, String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("window {s:?} is not of the form LO:HI"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad window bound {lo:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad window bound {hi:?}"))?;
    DegreeWindow::new(lo, hi).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisLabel {
    pub i: Vec<i64>,
    pub e: u8,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub degree: i64,
    pub weight: Vec<u64>,
    pub dim: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<BasisLabel>>,
}

/// The serialized answer to a `dims` query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsReport {
    pub variant: Variant,
    pub p: u64,
    pub generators: Vec<i64>,
    pub degree_window: [i64; 2],
    pub max_total_weight: u64,
    pub entries: Vec<Entry>,
}

impl BasisLabel {
    fn of(s: &AdmissibleSeq) -> Self {
        BasisLabel { i: s.i.clone(), e: s.e, word: s.word.to_string() }
    }

    /// `word[e=E](i_1 i_2 …)`, free of commas and semicolons.
    pub fn compact(&self) -> String {
        let i: Vec<String> = self.i.iter().map(|x| x.to_string()).collect();
        format!("{}[e={}]({})", self.word, self.e, i.join(" "))
    }
}

/// Run a query and package it; entries are ordered by total weight, then degree.
pub fn dims_report(q: &PLieQuery, guard: &Guard) -> crate::error::Result<DimsReport> {
    let res = dims(q, guard)?;
    let entries = res
        .dims
        .entries()
        .into_iter()
        .map(|(weight, degree, dim)| {
            let basis = res.basis.as_ref().map(|b| b.iter().filter(|s| s.degree == degree && s.weight == weight).map(BasisLabel::of).collect());
            Entry { degree, weight, dim, basis }
        })
        .collect();
    Ok(DimsReport {
        variant: q.variant,
        p: q.p,
        generators: q.gens.clone(),
        degree_window: [q.window.lo, q.window.hi],
        max_total_weight: q.max_total_weight,
        entries,
    })
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

pub fn render(r: &DimsReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("variant,p,gens,weight,degree,dim,label\n");
            let gens = join(&r.generators, ";");
            for e in &r.entries {
                let label = e.basis.as_ref().map(|b| b.iter().map(BasisLabel::compact).collect::<Vec<_>>().join(";")).unwrap_or_default();
                let _ = writeln!(s, "{},{},{},{},{},{},{}", r.variant, r.p, gens, join(&e.weight, ";"), e.degree, e.dim, label);
            }
            s
        }
        Format::Table => {
            let mut s = format!(
                "# {} p={} gens=[{}] window={}:{} max weight {}\n",
                r.variant,
                r.p,
                join(&r.generators, ", "),
                r.degree_window[0],
                r.degree_window[1],
                r.max_total_weight
            );
            let rows: Vec<[String; 4]> = r
                .entries
                .iter()
                .map(|e| {
                    let label = e.basis.as_ref().map(|b| b.iter().map(BasisLabel::compact).collect::<Vec<_>>().join("  ")).unwrap_or_default();
                    [format!("({})", join(&e.weight, ",")), e.degree.to_string(), e.dim.to_string(), label]
                })
                .collect();
            let head = ["weight", "degree", "dim", "basis"];
            let width: Vec<usize> = (0..3).map(|c| rows.iter().map(|r| r[c].len()).chain([head[c].len()]).max().unwrap()).collect();
            let line = |cells: [&str; 4]| {
                let mut l = format!("{:>w0$}  {:>w1$}  {:>w2$}", cells[0], cells[1], cells[2], w0 = width[0], w1 = width[1], w2 = width[2]);
                if !cells[3].is_empty() {
                    l.push_str("  ");
                    l.push_str(cells[3]);
                }
                l.push('\n');
                l
            };
            s.push_str(&line(if rows.iter().any(|r| !r[3].is_empty()) { head } else { [head[0], head[1], head[2], ""] }));
            for r in &rows {
                s.push_str(&line([&r[0], &r[1], &r[2], &r[3]]));
            }
            s
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Guard { .. } => EXIT_GUARD,
        _ => EXIT_USAGE,
    }
}

fn setup(c: &Common) -> Result<Guard, (i32, String)> {
    if let Some(t) = c.threads {
        if t == 0 {
            return Err((EXIT_USAGE, "--threads must be at least 1".into()));
        }
        // a second call in one process fails; the first pool stays in place
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    Ok(match c.guard_n {
        Some(n) => Guard::with_max_n(n),
        None => Guard::from_env(),
    })
}

fn cmd_dims(a: &DimsArgs) -> Result<i32, (i32, String)> {
    let guard = setup(&a.common)?;
    let q = PLieQuery { p: a.p, gens: a.gens.clone(), variant: a.variant, max_total_weight: a.max_weight, window: a.window, basis: a.basis };
    let report = dims_report(&q, &guard).map_err(|e| (exit_code(&e), e.to_string()))?;
    let text = render(&report, a.format);
    match &a.out {
        Some(path) => std::fs::write(path, text).map_err(|e| (EXIT_USAGE, format!("cannot write {}: {e}", path.display())))?,
        None => {
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
        }
    }
    Ok(EXIT_OK)
}

fn suites(s: SuiteArg) -> Vec<Suite> {
    match s {
        SuiteArg::Homology => vec![Suite::Homology],
        SuiteArg::Oracle => vec![Suite::Oracle],
        SuiteArg::Euler => vec![Suite::Euler],
        SuiteArg::HiltonMilnor => vec![Suite::HiltonMilnor],
        SuiteArg::Ehp => vec![Suite::Ehp],
        SuiteArg::Stabilizer => vec![Suite::Stabilizer],
        SuiteArg::Lyndon => vec![Suite::Lyndon],
        SuiteArg::All => Suite::ALL.to_vec(),
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<i32, (i32, String)> {
    let guard = setup(&a.common)?;
    let level = match a.level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for s in suites(a.suite) {
        reports.push(verify::run(s, level, &guard).map_err(|e| (exit_code(&e), e.to_string()))?);
    }
    let mut out = std::io::stdout().lock();
    if a.json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&reports).expect("report serializes"));
    } else {
        for r in &reports {
            let status = if r.passed() { "ok" } else { "FAILED" };
            let _ = writeln!(out, "{:<14} {:>6} checks  {status}", r.suite.name(), r.checks);
            if let Some(d) = r.discrepancies.first() {
                let _ = writeln!(out, "  first discrepancy: {}\n    expected {}\n    got      {}", d.check, d.expected, d.got);
            }
        }
    }
    Ok(if reports.iter().all(SuiteReport::passed) { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let res = match &cli.command {
        Command::Dims(a) => cmd_dims(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match res {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_parsing() {
        assert_eq!(parse_window("-20:0").unwrap(), DegreeWindow { lo: -20, hi: 0 });
        assert!(parse_window("3").is_err());
        assert!(parse_window("4:1").is_err());
    }

    #[test]
    fn negative_generators_parse() {
        let cli = Cli::try_parse_from(["plie", "dims", "--variant", "delta", "--p", "2", "--gens", "-1,-2", "--max-weight", "3", "--window", "-9:0"]).unwrap();
        let Command::Dims(a) = cli.command else { panic!() };
        assert_eq!(a.gens, vec![-1, -2]);
        assert_eq!(a.window, DegreeWindow { lo: -9, hi: 0 });
    }

    #[test]
    fn flag_errors_exit_two() {
        assert_eq!(run(["plie", "dims", "--variant", "delta", "--p", "4", "--gens", "-1", "--max-weight", "2", "--window", "-5:0"]), EXIT_USAGE);
        assert_eq!(run(["plie", "dims", "--variant", "nope", "--p", "2", "--gens", "-1", "--max-weight", "2", "--window", "-5:0"]), EXIT_USAGE);
    }

    #[test]
    fn csv_fields_have_no_commas() {
        let q = PLieQuery { p: 2, gens: vec![-1, -2], variant: Variant::Delta, max_total_weight: 3, window: DegreeWindow { lo: -10, hi: 0 }, basis: true };
        let r = dims_report(&q, &Guard::default()).unwrap();
        let csv = render(&r, Format::Csv);
        for line in csv.lines() {
            assert_eq!(line.split(',').count(), 7, "{line}");
        }
    }
}
