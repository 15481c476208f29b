//! Command-line surface. Every command renders its output to a string so the
//! binary stays a thin wrapper and the commands can be tested in-process.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::analysis::{analyze, AnalysisSummary};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::gammac::{load, parse, serialize, validate, GammaC};
use crate::pipeline::{resolve, series, ResolveOptions};
use crate::resgraph::{euler_check, export, ExportDocument, ExportFormat, GraphExport};

/// Exit code for a domain error (invalid input, inadmissible k, ...).
pub const EXIT_DOMAIN: i32 = 1;
/// Exit code for bad command-line usage.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "singraph", version, about = "Resolution graphs of f + g^k from the curve-arrangement graph of (f, g)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a graph document; exits 1 when it violates a constraint.
    Validate { path: PathBuf },
    /// Report the normalization, the branches of the singular locus and the
    /// Euler characteristic correction coefficient.
    Analyze { path: PathBuf },
    /// Resolution graph of f + g^k.
    Resolve {
        path: PathBuf,
        #[arg(long)]
        k: i64,
        /// Also emit the embedded graph before stripping.
        #[arg(long)]
        embedded: bool,
        /// Keep (-1)-curves.
        #[arg(long)]
        no_minimize: bool,
        /// Write the resolution graph in DOT format to this file.
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
        /// Compute even when k is below the positivity bound.
        #[arg(long)]
        force: bool,
    },
    /// One row per k in an inclusive range `A..B`.
    Series {
        path: PathBuf,
        #[arg(long, value_name = "A..B")]
        k: KRange,
        /// Write the table as CSV to this file.
        #[arg(long, value_name = "OUT")]
        csv: Option<PathBuf>,
    },
    /// Print a built-in graph document.
    Fixture {
        /// One of smooth, node, cusp, three-lines, tacnode, lines:D, pencil:D.
        name: String,
    },
}

/// Inclusive range written `A..B` (or `A..=B`, or a single `A`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KRange {
    pub start: i64,
    pub end: i64,
}

impl FromStr for KRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => (num(s)?, num(s)?),
        };
        if start > end {
            return Err(format!("empty range {start}..{end}"));
        }
        Ok(Self { start, end })
    }
}

/// What a command produced: text for stdout and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

fn read(path: &Path) -> Result<String> {
    let io = |source| Error::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(io)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn cmd_validate(path: &Path) -> Result<Output> {
    let g = parse(&read(path)?)?;
    let report = validate(&g);
    let mut out = String::new();
    for v in &report.violations {
        out.push_str(&format!("violation [{}] {}: {}\n", v.clause, v.element, v.message));
    }
    for v in &report.advisories {
        out.push_str(&format!("advisory [{}] {}: {}\n", v.clause, v.element, v.message));
    }
    if report.is_valid() {
        out.push_str("ok\n");
        Ok(Output::ok(out))
    } else {
        Ok(Output {
            stdout: out,
            code: EXIT_DOMAIN,
        })
    }
}

pub fn analysis_summary(g: &GammaC) -> Result<AnalysisSummary> {
    Ok(analyze(g)?.summary())
}

pub fn cmd_analyze(path: &Path) -> Result<Output> {
    let g = load(&read(path)?)?;
    Ok(Output::ok(json(&analysis_summary(&g)?)))
}

#[derive(Debug, Serialize)]
struct ResolveDocument {
    k: i64,
    k_min: i64,
    regime: &'static str,
    graph: ExportDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    embedded: Option<ExportDocument>,
}

pub struct ResolveArgs<'a> {
    pub k: i64,
    pub embedded: bool,
    pub no_minimize: bool,
    pub dot: Option<&'a Path>,
    pub force: bool,
}

pub fn cmd_resolve(path: &Path, args: ResolveArgs<'_>) -> Result<Output> {
    let g = load(&read(path)?)?;
    let options = ResolveOptions {
        force: args.force,
        minimize: !args.no_minimize,
        ..ResolveOptions::default()
    };
    let res = resolve(&g, args.k, options)?;
    let embedded = if args.embedded {
        let violations = euler_check(&res.embedded)?;
        if let Some(v) = violations.first() {
            return Err(Error::Inadmissible(format!(
                "embedded graph fails the Euler relation at {} (residual {})",
                v.vertex, v.residual
            )));
        }
        Some(res.embedded.export_document())
    } else {
        None
    };
    if let Some(out) = args.dot {
        write(out, &export(&res.minimal, ExportFormat::Dot))?;
    }
    Ok(Output::ok(json(&ResolveDocument {
        k: res.k,
        k_min: res.k_min,
        regime: res.regime.label(),
        graph: res.minimal.export_document(),
        embedded,
    })))
}

pub fn cmd_series(path: &Path, k: KRange, csv_out: Option<&Path>) -> Result<Output> {
    let g = load(&read(path)?)?;
    let report = series(&g, k.start..=k.end, ResolveOptions::default());
    if let Some(out) = csv_out {
        let text = report.to_csv().map_err(|e| Error::Io {
            path: out.display().to_string(),
            source: e.into(),
        })?;
        write(out, &text)?;
    }
    let mut s = format!(
        "{:>5}  {:<10}  {:>5}  {:>5}  {:>12}  {:>8}  {:<16}\n",
        "k", "regime", "|V|", "|E|", "|det|", "definite", "stable"
    );
    let show = |x: Option<String>| x.unwrap_or_else(|| "-".into());
    for r in &report.rows {
        if let Some(err) = &r.error {
            s.push_str(&format!("{:>5}  error: {err}\n", r.k));
            continue;
        }
        s.push_str(&format!(
            "{:>5}  {:<10}  {:>5}  {:>5}  {:>12}  {:>8}  {:<16}\n",
            r.k,
            r.regime.map_or("-", |x| x.label()),
            show(r.vertices.map(|v| v.to_string())),
            show(r.edges.map(|v| v.to_string())),
            show(r.det_abs.clone()),
            show(r.definite.map(|v| v.to_string())),
            show(r.stable_hash.clone()),
        ));
    }
    s.push_str(&format!("stable part constant: {}\n", report.stable_part_constant));
    Ok(Output::ok(s))
}

pub fn cmd_fixture(name: &str) -> Result<Output> {
    let g = fixtures::fixture(name).ok_or_else(|| Error::UnknownFixture {
        name: name.to_string(),
        known: fixtures::NAMES.join(", "),
    })?;
    Ok(Output::ok(serialize(&g)))
}

pub fn run(cli: Cli) -> Result<Output> {
    match cli.command {
        Command::Validate { path } => cmd_validate(&path),
        Command::Analyze { path } => cmd_analyze(&path),
        Command::Resolve {
            path,
            k,
            embedded,
            no_minimize,
            dot,
            force,
        } => cmd_resolve(
            &path,
            ResolveArgs {
                k,
                embedded,
                no_minimize,
                dot: dot.as_deref(),
                force,
            },
        ),
        Command::Series { path, k, csv } => cmd_series(&path, k, csv.as_deref()),
        Command::Fixture { name } => cmd_fixture(&name),
    }
}
