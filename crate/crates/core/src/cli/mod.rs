//! Command-line front end: `verify`, `compare` and `search`.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 a check failed,
//! 3 a counterexample search ran out of budget and nothing failed.

mod compare;
mod scenario;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use nalgebra::DMatrix;
use serde::Serialize;

pub use compare::{compare_rows, CompareRow, COLUMNS};
pub use scenario::{CompareSection, Format, ScenarioFile, SearchSection, SCENARIO_VERSION};

use crate::error::{Error, Result};
use crate::two_interval::{counterexample_search, SearchKind, SearchOptions, WeightLadder, Witness};
use crate::verification::{run_suite, Status, SuiteId, SuiteReport, Tolerances};

/// Overrides the scenario seed; a `--seed` flag overrides both.
pub const SEED_ENV: &str = "DELAYBOUNDS_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "delaybounds", version, about = "Check and tabulate quadratic-integral lower bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run property suites from a scenario file.
    Verify(VerifyArgs),
    /// Tabulate every bound for the scenario's `[compare]` section.
    Compare(CompareArgs),
    /// Search for a counterexample witness.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Directory for record and table files.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Stdout format; the scenario's `format` when absent.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub scenario: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Trials per `(n, ν)` pair.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Draws per counterexample search.
    #[arg(long)]
    pub budget: Option<u64>,
    /// One tolerance for every property.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Restrict to these suites.
    #[arg(long = "suite")]
    pub suites: Vec<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub scenario: PathBuf,
    /// Ordering tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Scenario whose `[search]` section supplies defaults.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    #[arg(long)]
    pub kind: Option<SearchKind>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub sweep: Option<usize>,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(a, out),
        Command::Compare(a) => compare(a, out),
        Command::Search(a) => search(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::ConfigParse(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string(value).map_err(|e| Error::Io(e.to_string()))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join(name), contents).map_err(io)
}

/// Left-aligned plain-text table.
pub fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(header.to_vec());
    s += &line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in rows {
        s += &line(row.iter().map(String::as_str).collect());
    }
    s
}

pub const VERIFY_COLUMNS: [&str; 6] = ["suite", "status", "trials", "checks", "failures", "worst margin"];

/// The table view of verify records.
pub fn verify_table(reports: &[SuiteReport]) -> String {
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            let worst = r
                .worst_margins
                .values()
                .copied()
                .fold(f64::INFINITY, f64::min);
            vec![
                r.suite.clone(),
                serde_json::to_value(r.status)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default(),
                r.trials.to_string(),
                r.checks.to_string(),
                r.failures.len().to_string(),
                if worst.is_finite() { format!("{worst:.3e}") } else { "-".into() },
            ]
        })
        .collect();
    render_table(&VERIFY_COLUMNS, &rows)
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let doc = ScenarioFile::load(&a.scenario)?;
    let mut cfg = doc.instance.clone();
    if let Some(seed) = a.seed.or(env_seed()?) {
        cfg.seed = seed;
    }
    if let Some(t) = a.trials {
        cfg.trials = t;
    }
    if let Some(b) = a.budget {
        cfg.budget = b;
    }
    if let Some(tol) = a.tol {
        cfg.tolerances = Tolerances::uniform(tol);
    }
    cfg.validate()?;
    let suites = if a.suites.is_empty() {
        doc.selected_suites()
    } else {
        a.suites
            .iter()
            .map(|s| s.parse::<SuiteId>())
            .collect::<Result<Vec<_>>>()?
    };
    let format = a.output.format.unwrap_or(doc.format);

    let mut reports = Vec::with_capacity(suites.len());
    for id in suites {
        let report = run_suite(id, &cfg)?;
        let line = to_json(&report)?;
        if format == Format::Records {
            writeln!(out, "{line}").map_err(io)?;
        }
        if let Some(dir) = &a.output.out {
            write_file(dir, &format!("{}.jsonl", report.suite), &(line + "\n"))?;
        }
        reports.push(report);
    }
    let table = verify_table(&reports);
    if format == Format::Table {
        write!(out, "{table}").map_err(io)?;
    }
    if let Some(dir) = &a.output.out {
        write_file(dir, "verify.txt", &table)?;
    }

    let failed = reports.iter().any(|r| r.status == Status::Fail);
    let exhausted = reports.iter().any(|r| r.status == Status::Exhausted);
    Ok(if failed {
        EXIT_FAILED
    } else if exhausted {
        EXIT_EXHAUSTED
    } else {
        EXIT_OK
    })
}

fn compare(a: CompareArgs, out: &mut dyn Write) -> Result<i32> {
    let doc = ScenarioFile::load(&a.scenario)?;
    let section = doc
        .compare
        .as_ref()
        .ok_or_else(|| Error::ConfigParse("scenario has no [compare] section".into()))?;
    let tol = a.tol.unwrap_or(doc.instance.tolerances.ordering);
    let rows = compare_rows(section, tol)?;
    let format = a.output.format.unwrap_or(doc.format);

    let mut records = String::new();
    for row in &rows {
        records += &to_json(row)?;
        records.push('\n');
    }
    let cells: Vec<Vec<String>> = rows.iter().map(CompareRow::cells).collect();
    let table = render_table(&COLUMNS, &cells);
    match format {
        Format::Records => write!(out, "{records}"),
        Format::Table => write!(out, "{table}"),
    }
    .map_err(io)?;
    if let Some(dir) = &a.output.out {
        write_file(dir, "compare.jsonl", &records)?;
        write_file(dir, "compare.txt", &table)?;
    }
    Ok(if rows.iter().all(|r| r.ordered) {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

/// Search record: the witness or the exhausted budget.
#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct SearchRecord {
    pub kind: SearchKind,
    pub seed: u64,
    pub budget: u64,
    pub order: usize,
    pub dim: usize,
    pub status: SearchStatus,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    Found,
    Exhausted,
}

fn search(a: SearchArgs, out: &mut dyn Write) -> Result<i32> {
    let (section, doc_format) = match &a.scenario {
        Some(path) => {
            let doc = ScenarioFile::load(path)?;
            (doc.search.clone(), doc.format)
        }
        None => (SearchSection::default(), Format::Table),
    };
    let kind = a.kind.unwrap_or(section.kind);
    let seed = a.seed.or(env_seed()?).unwrap_or(section.seed);
    let budget = a.budget.unwrap_or(section.budget);
    let sweep = a.sweep.unwrap_or(section.sweep);
    let order = a.order.unwrap_or(section.order);
    let dim = a.dim.unwrap_or(section.dim);
    if dim == 0 {
        return Err(Error::InvalidConfig("dim must be at least 1".into()));
    }
    let ladder = WeightLadder::new(&DMatrix::identity(dim, dim), order)?;
    let opts = SearchOptions { seed, budget, sweep };
    let witness = match counterexample_search(kind, &ladder, &opts) {
        Ok(w) => Some(w),
        Err(Error::BudgetExhausted { .. }) => None,
        Err(e) => return Err(e),
    };
    let record = SearchRecord {
        kind,
        seed,
        budget,
        order,
        dim,
        status: if witness.is_some() {
            SearchStatus::Found
        } else {
            SearchStatus::Exhausted
        },
        witness,
    };
    let line = to_json(&record)?;
    let summary = search_summary(&record);
    match a.output.format.unwrap_or(doc_format) {
        Format::Records => writeln!(out, "{line}"),
        Format::Table => write!(out, "{summary}"),
    }
    .map_err(io)?;
    if let Some(dir) = &a.output.out {
        write_file(dir, &format!("witness-{kind:?}.json"), &(line + "\n"))?;
        write_file(dir, &format!("witness-{kind:?}.txt"), &summary)?;
    }
    Ok(match record.status {
        SearchStatus::Found => EXIT_OK,
        SearchStatus::Exhausted => EXIT_EXHAUSTED,
    })
}

fn search_summary(r: &SearchRecord) -> String {
    let mut rows = vec![
        vec!["kind".to_string(), format!("{:?}", r.kind)],
        vec!["seed".into(), r.seed.to_string()],
        vec!["budget".into(), r.budget.to_string()],
        vec!["status".into(), format!("{:?}", r.status).to_lowercase()],
    ];
    if let Some(w) = &r.witness {
        rows.push(vec!["trial".into(), w.trial.to_string()]);
        rows.push(vec!["alpha".into(), format!("{}", w.alpha)]);
        rows.push(vec!["competitors".into(), w.competitors.to_string()]);
        rows.push(vec!["worst negative".into(), format!("{:.6e}", w.worst_negative)]);
        rows.push(vec!["worst positive".into(), format!("{:.6e}", w.worst_positive)]);
    }
    render_table(&["field", "value"], &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("delaybounds").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn help_and_usage_errors() {
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
        assert_eq!(run_args(&[]).0, EXIT_USAGE);
        assert_eq!(run_args(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["search", "--kind", "Q"]).0, EXIT_USAGE);
    }

    #[test]
    fn missing_scenario_is_config_error() {
        let (code, _, err) = run_args(&["verify", "/nonexistent/scenario.toml"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("cannot read"));
    }

    #[test]
    fn search_budget_zero_exhausts() {
        let (code, out, _) = run_args(&["search", "--kind", "B", "--budget", "0", "--format", "records"]);
        assert_eq!(code, EXIT_EXHAUSTED);
        let rec: SearchRecord = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(rec.status, SearchStatus::Exhausted);
        assert!(rec.witness.is_none());
    }

    #[test]
    fn table_alignment() {
        let t = render_table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxyz  1\n");
    }
}
