//! Command-line front end. `run` returns the process exit code: 0 on
//! success, 1 on domain errors, 2 on usage errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bounds::{bound_report_lenient, bound_report_with_tol, BoundReport, BOUND_TOL};
use crate::error::Error;
use crate::extremal::{find_extremal, verify_table, CellStatus, VerifyReport};
use crate::graph_model::{parse_graph_spec, GraphSummary, ThresholdGraph};
use crate::spectral::DEFAULT_TOL;
use crate::walks::WalkTable;

pub const ANALYZE_CSV_HEADER: &str = "generating,n,m,c,z,rho,lower_cubic,lower_corollary,lower_quadratic,upper_cubic,upper_inequality,sandwich_ok";
pub const WALKS_CSV_HEADER: &str = "k,LW,LW_prime,LW_double_prime";
pub const FP_CSV_HEADER: &str = "p,F_p";
pub const ENUMERATE_CSV_HEADER: &str = "generating,c,z,m,rho,lower_cubic,lower_corollary,lower_quadratic,upper_cubic,upper_inequality,is_max";
pub const VERIFY_CSV_HEADER: &str = "n,m,row,status,predicted,empirical,rho_max";

#[derive(Debug, Parser)]
#[command(name = "threshold-spectra", version, about = "Walk counts, spectral radii and bounds for threshold graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral radius and every bound for one graph.
    Analyze {
        /// `gen:<bits>`, `comp:G{p1,...,pk}` or `bzp:<c>:<b1>,...,<bz>`
        spec: String,
        /// Power-iteration tolerance.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact lazy-walk counts and `F_p` values.
    Walks {
        spec: String,
        #[arg(long, default_value_t = 50)]
        kmax: usize,
        /// Largest `p` for `F_p`; defaults to `kmax`.
        #[arg(long)]
        pmax: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Census of connected threshold graphs of order `n` and size `m`.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compares the exhaustive maximizers with the table predictions.
    Verify {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Csv,
}

impl OutputArgs {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            Format::Human
        }
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return e.exit_code();
        }
    };
    let (result, target) = match &cli.command {
        Command::Analyze { spec, tol, out } => (analyze(spec, *tol, out.format()), out.output.clone()),
        Command::Walks {
            spec,
            kmax,
            pmax,
            out,
        } => (
            walks(spec, *kmax, pmax.unwrap_or(*kmax), out.format()),
            out.output.clone(),
        ),
        Command::Enumerate { n, m, out } => (enumerate(*n, *m, out.format()), out.output.clone()),
        Command::Verify { n_max, n_min, out } => {
            (verify(*n_min, *n_max, out.format()), out.output.clone())
        }
    };
    match result {
        Ok(text) => {
            let written = match target {
                Some(path) => std::fs::write(&path, text.as_bytes())
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => 0,
                Err(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    1
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

/// 17 significant digits.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

#[derive(Serialize)]
struct AnalyzeJson<'a> {
    graph: GraphSummary,
    #[serde(flatten)]
    report: &'a BoundReport,
}

fn analyze(spec: &str, tol: f64, format: Format) -> Result<String, Failure> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::Usage(format!("--tol must be positive, got {tol}")));
    }
    let g = parse_graph_spec(spec)?;
    let report = bound_report_with_tol(&g, tol)?;
    Ok(match format {
        Format::Json => to_json(&AnalyzeJson {
            graph: g.summary(),
            report: &report,
        }),
        Format::Csv => format!(
            "{ANALYZE_CSV_HEADER}\n{},{},{},{},{},{},{},{},{},{},{},{}\n",
            g.generating(),
            g.n(),
            g.m(),
            g.c(),
            g.z(),
            num(report.rho),
            opt(report.lower_cubic),
            opt(report.lower_corollary),
            opt(report.lower_quadratic),
            opt(report.upper_cubic),
            opt(report.upper_inequality),
            report.sandwich_ok.map(|b| b.to_string()).unwrap_or_default(),
        ),
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "graph {} (gen {}, n={}, m={}, c={}, z={})",
                g,
                g.generating(),
                g.n(),
                g.m(),
                g.c(),
                g.z()
            );
            let _ = writeln!(s, "rho = {:.12}", report.rho);
            let _ = writeln!(s, "{}", sandwich_line(&report));
            s
        }
    })
}

/// Lower bounds ascending, then rho, then upper bounds ascending, joined by
/// `<=` where the order holds and `>` where it fails.
pub fn sandwich_line(report: &BoundReport) -> String {
    let mut lowers: Vec<(&str, f64)> = report
        .lowers()
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect();
    let mut uppers: Vec<(&str, f64)> = report
        .uppers()
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect();
    lowers.sort_by(|a, b| a.1.total_cmp(&b.1));
    uppers.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut items = lowers;
    items.push(("rho", report.rho));
    items.extend(uppers);
    let mut line = String::new();
    for (i, (name, v)) in items.iter().enumerate() {
        if i > 0 {
            let prev = items[i - 1].1;
            line.push_str(if prev <= v + BOUND_TOL { " <= " } else { " > " });
        }
        let _ = write!(line, "{name} {v:.9}");
    }
    let verdict = match report.sandwich_ok {
        Some(true) => "ok",
        Some(false) => "VIOLATED",
        None => "n/a",
    };
    let _ = write!(line, "  [{verdict}]");
    line
}

#[derive(Serialize)]
struct WalksJson<'a> {
    graph: GraphSummary,
    kmax: usize,
    pmax: usize,
    #[serde(flatten)]
    table: &'a WalkTable,
}

fn walk_table(g: &ThresholdGraph, kmax: usize, pmax: usize) -> Result<WalkTable, Failure> {
    Ok(WalkTable::new(g, kmax, pmax)?)
}

fn walks(spec: &str, kmax: usize, pmax: usize, format: Format) -> Result<String, Failure> {
    let g = parse_graph_spec(spec)?;
    let table = walk_table(&g, kmax, pmax)?;
    Ok(match format {
        Format::Json => to_json(&WalksJson {
            graph: g.summary(),
            kmax,
            pmax,
            table: &table,
        }),
        Format::Csv => {
            let mut s = String::new();
            let _ = writeln!(s, "{WALKS_CSV_HEADER}");
            for k in 0..=kmax {
                let _ = writeln!(
                    s,
                    "{k},{},{},{}",
                    table.lw[k], table.lw_prime[k], table.lw_double_prime[k]
                );
            }
            let _ = writeln!(s);
            let _ = writeln!(s, "{FP_CSV_HEADER}");
            for (p, v) in table.fp.iter().enumerate() {
                let _ = writeln!(s, "{p},{v}");
            }
            s
        }
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(s, "graph {} (gen {})", g, g.generating());
            let _ = writeln!(s, "{:>4}  {:>24}  {:>24}  {:>24}", "k", "LW'", "LW", "LW''");
            for k in 0..=kmax {
                let _ = writeln!(
                    s,
                    "{k:>4}  {:>24}  {:>24}  {:>24}",
                    table.lw_prime[k], table.lw[k], table.lw_double_prime[k]
                );
            }
            let _ = writeln!(s);
            for (p, v) in table.fp.iter().enumerate() {
                let _ = writeln!(s, "F_{p} = {v}");
            }
            s
        }
    })
}

#[derive(Serialize)]
struct CensusEntry {
    generating: String,
    composition: String,
    c: usize,
    z: usize,
    m: usize,
    #[serde(flatten)]
    report: BoundReport,
    is_max: bool,
}

#[derive(Serialize)]
struct EnumerateJson {
    n: usize,
    m: usize,
    census_size: usize,
    rho_max: f64,
    maximizers: Vec<String>,
    near_ties: Vec<String>,
    census: Vec<CensusEntry>,
}

fn enumerate(n: usize, m: usize, format: Format) -> Result<String, Failure> {
    let result = find_extremal(n, m)?;
    let mut census = Vec::with_capacity(result.census.len());
    for r in &result.census {
        let mut report = bound_report_lenient(&r.graph)?;
        report.rho = r.rho;
        census.push(CensusEntry {
            generating: r.graph.generating().to_string(),
            composition: r.graph.to_string(),
            c: r.graph.c(),
            z: r.graph.z(),
            m: r.graph.m(),
            is_max: result.is_maximizer(&r.graph),
            report,
        });
    }
    let maximizers: Vec<String> = result.maximizers.iter().map(|g| g.to_string()).collect();
    Ok(match format {
        Format::Json => to_json(&EnumerateJson {
            n,
            m,
            census_size: result.census_size,
            rho_max: result.rho_max,
            maximizers,
            near_ties: result.near_ties.iter().map(|r| r.graph.to_string()).collect(),
            census,
        }),
        Format::Csv => {
            let mut s = String::new();
            let _ = writeln!(s, "{ENUMERATE_CSV_HEADER}");
            for e in &census {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    e.generating,
                    e.c,
                    e.z,
                    e.m,
                    num(e.report.rho),
                    opt(e.report.lower_cubic),
                    opt(e.report.lower_corollary),
                    opt(e.report.lower_quadratic),
                    opt(e.report.upper_cubic),
                    opt(e.report.upper_inequality),
                    e.is_max
                );
            }
            s
        }
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "n={n} m={m}: {} connected threshold graphs, rho_max = {:.12}",
                result.census_size, result.rho_max
            );
            let _ = writeln!(s, "maximizers: {}", maximizers.join(" "));
            for r in &result.near_ties {
                let _ = writeln!(s, "near tie: {} rho = {:.12}", r.graph, r.rho);
            }
            for e in &census {
                let mark = if e.is_max { "*" } else { " " };
                let _ = writeln!(s, "{mark} {:<20} {:.12}", e.composition, e.report.rho);
            }
            s
        }
    })
}

fn verify(n_min: usize, n_max: usize, format: Format) -> Result<String, Failure> {
    if n_min > n_max {
        return Err(Failure::Usage(format!(
            "--n-min {n_min} exceeds --n-max {n_max}"
        )));
    }
    let report: VerifyReport = verify_table(n_min..=n_max)?;
    Ok(match format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = String::new();
            let _ = writeln!(s, "{VERIFY_CSV_HEADER}");
            for c in &report.cells {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    c.n,
                    c.m,
                    row_name(c),
                    status_name(c.status),
                    c.predicted.join(";"),
                    c.empirical.join(";"),
                    num(c.rho_max)
                );
            }
            s
        }
        Format::Human => {
            let mut s = String::new();
            for c in &report.cells {
                let _ = writeln!(
                    s,
                    "n={:<3} m={:<4} {:<28} {:<16} predicted [{}] empirical [{}]",
                    c.n,
                    c.m,
                    row_name(c),
                    status_name(c.status),
                    c.predicted.join(" "),
                    c.empirical.join(" ")
                );
            }
            let _ = writeln!(s, "{} cells, {} mismatches", report.cells.len(), report.mismatches);
            s
        }
    })
}

fn row_name(c: &crate::extremal::CellReport) -> String {
    match serde_json::to_value(c.row) {
        Ok(serde_json::Value::Object(map)) => {
            let mut parts: Vec<String> = Vec::new();
            for (k, v) in map {
                if k == "row" {
                    parts.insert(0, v.as_str().unwrap_or_default().to_string());
                } else {
                    parts.push(format!("{k}={v}"));
                }
            }
            parts.join(" ")
        }
        _ => String::new(),
    }
}

fn status_name(s: CellStatus) -> &'static str {
    match s {
        CellStatus::Match => "match",
        CellStatus::Mismatch => "mismatch",
        CellStatus::EvidenceFor => "evidence_for",
        CellStatus::EvidenceAgainst => "evidence_against",
    }
}
