//! Command-line front end. [`run`] is the whole program minus process exit,
//! so it can be driven from tests.

mod render;
mod svg;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub use svg::{emit_svg, render_svg, PITCH};

use crate::error::Error;
use crate::picard::{default_labels, solve_min_degree, surface_with_labels, ChainReport};
use crate::polygon::{convex_hull, LatticePoint, LatticePolygon};
use crate::toric::{
    fibration_exponents, optimal_toric_families, FibrationDescriptor, MonomialEmbedding,
};
use crate::width::{
    degenerate_report, solve, solve_bruteforce, TraceLevel, Viewangle, WidthReport,
};

#[derive(Debug, Parser)]
#[command(
    name = "optfam",
    version,
    about = "Lattice width, toric fibrations and minimal-degree families"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Width and optimal directions of a polygon file.
    Width(WidthArgs),
    /// Fibrations of the toric surface of a monomial embedding.
    Toric(ToricArgs),
    /// Adjoint chain and minimal-degree families of a blown-up plane.
    Surface(SurfaceArgs),
    /// SVG picture of a polygon, its adjoint chain and its optimal directions.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Input file.
    input: PathBuf,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct WidthArgs {
    #[command(flatten)]
    common: Common,
    /// Use the exhaustive search and cross-check it against the recursion.
    #[arg(long)]
    oracle: bool,
    /// Include the adjoint chain with case labels.
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Args)]
struct ToricArgs {
    #[command(flatten)]
    common: Common,
    /// Single direction query, written m,n.
    #[arg(long, value_parser = parse_direction, allow_hyphen_values = true, conflicts_with = "optimal")]
    direction: Option<(i64, i64)>,
    /// All optimal families (the default).
    #[arg(long)]
    optimal: bool,
}

#[derive(Debug, Args)]
struct SurfaceArgs {
    #[command(flatten)]
    common: Common,
    /// Print the full chain table.
    #[arg(long)]
    chain: bool,
}

#[derive(Debug, Args)]
struct PlotArgs {
    #[command(flatten)]
    common: Common,
    /// Output SVG path.
    #[arg(short = 'o', value_name = "PATH")]
    output: PathBuf,
}

fn parse_direction(s: &str) -> Result<(i64, i64), String> {
    let (m, n) = s
        .split_once(',')
        .ok_or_else(|| format!("expected m,n but got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(m)?, parse(n)?))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolygonFile {
    points: Vec<(i64, i64)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EmbeddingFile {
    exponents: Vec<(i64, i64)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceFile {
    parametric_degree: i64,
    multiplicities: Vec<i64>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthOutput {
    pub width: i64,
    pub optimal: BTreeSet<Viewangle>,
    pub finite: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceLevel>>,
    /// Whether the exhaustive search produced (and confirmed) the result.
    pub oracle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricOutput {
    /// Minimal family degree; absent for single-direction queries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<i64>,
    pub descriptors: Vec<FibrationDescriptor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlotOutput {
    pub path: PathBuf,
    pub polygons: usize,
    pub bundles: usize,
}

/// Machine-readable result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verb", rename_all = "kebab-case")]
pub enum Report {
    Width(WidthOutput),
    Toric(ToricOutput),
    Surface(ChainReport),
    Plot(PlotOutput),
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Domain(e)
    }
}

fn read_input<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("cannot parse {}: {e}", path.display())))
}

fn read_polygon(path: &Path) -> Result<LatticePolygon, Failure> {
    let file: PolygonFile = read_input(path)?;
    let pts: Vec<LatticePoint> = file
        .points
        .iter()
        .map(|&(x, y)| LatticePoint::checked(x, y))
        .collect::<Result<_, _>>()?;
    Ok(convex_hull(&pts)?)
}

fn width_report(poly: &LatticePolygon, oracle: bool) -> Result<WidthReport, Error> {
    if poly.dim() < 2 {
        return degenerate_report(poly);
    }
    let report = solve(poly)?;
    if oracle {
        let check = solve_bruteforce(poly)?;
        if (check.width, &check.optimal) != (report.width, &report.optimal) {
            return Err(Error::InvariantViolated(format!(
                "oracle found v = {} with {} directions, recursion found v = {} with {}",
                check.width,
                check.optimal.len(),
                report.width,
                report.optimal.len()
            )));
        }
    }
    Ok(report)
}

fn run_width(args: &WidthArgs) -> Result<Report, Failure> {
    let poly = read_polygon(&args.common.input)?;
    let r = width_report(&poly, args.oracle)?;
    Ok(Report::Width(WidthOutput {
        width: r.width,
        optimal: r.optimal,
        finite: r.finite,
        trace: args.trace.then_some(r.trace),
        oracle: args.oracle && poly.dim() == 2,
    }))
}

fn run_toric(args: &ToricArgs) -> Result<Report, Failure> {
    let file: EmbeddingFile = read_input(&args.common.input)?;
    let emb = MonomialEmbedding::new(&file.exponents)?;
    Ok(Report::Toric(match args.direction {
        Some((m, n)) => {
            let h = Viewangle::new(m, n)?;
            ToricOutput {
                width: None,
                descriptors: vec![fibration_exponents(&emb, h)?],
            }
        }
        None => {
            let fams = optimal_toric_families(&emb)?;
            ToricOutput {
                width: Some(fams.width),
                descriptors: fams.descriptors,
            }
        }
    }))
}

fn run_surface(args: &SurfaceArgs) -> Result<Report, Failure> {
    let file: SurfaceFile = read_input(&args.common.input)?;
    let labels = file
        .labels
        .unwrap_or_else(|| default_labels(file.multiplicities.len()));
    let model = surface_with_labels(file.parametric_degree, &file.multiplicities, labels)?;
    Ok(Report::Surface(solve_min_degree(&model)?))
}

fn run_plot(args: &PlotArgs) -> Result<Report, Failure> {
    let poly = read_polygon(&args.common.input)?;
    if poly.dim() < 2 {
        return Err(Error::DegeneratePolygon { dim: poly.dim() }.into());
    }
    let report = solve(&poly)?;
    emit_svg(&poly, &report, &args.output)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", args.output.display())))?;
    Ok(Report::Plot(PlotOutput {
        path: args.output.clone(),
        polygons: report.trace.iter().filter(|l| l.polygon.dim() == 2).count(),
        bundles: report.optimal.len(),
    }))
}

/// Parses `argv` (including the program name), executes the verb and
/// renders the result. Exit codes: 0 success, 1 domain error, 2 usage or I/O error.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(2, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    let (result, json, chain) = match &cli.verb {
        Verb::Width(a) => (run_width(a), a.common.json, false),
        Verb::Toric(a) => (run_toric(a), a.common.json, false),
        Verb::Surface(a) => (run_surface(a), a.common.json, a.chain),
        Verb::Plot(a) => (run_plot(a), a.common.json, false),
    };
    match result {
        Ok(report) if json => Outcome::ok(report.to_json() + "\n"),
        Ok(report) => Outcome::ok(render::text(&report, chain)),
        Err(Failure::Usage(msg)) => Outcome::fail(2, format!("error: {msg}\n")),
        Err(Failure::Domain(e)) => Outcome::fail(1, render::domain_error(&e)),
    }
}
