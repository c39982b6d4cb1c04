//! Command-line front end behind the `orlicz-lab` binary.
//!
//! Exit codes: 0 pass or definite verdict, 1 failed check, 2 inconclusive,
//! 64 usage error.

use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::growth::{classify_injection, GrowthSampleGrid, InjectionReport, Verdict, DEFAULT_A_POINTS};
use crate::norm::{bergman_norm, hardy_norm, luxemburg_norm, NormResult};
use crate::orlicz::{Family, FunctionSpec, OrliczFunction};
use crate::quadrature::MeasureDomain;
use crate::sampled::FunctionInput;
use crate::suites::{self, BatteryConfig, SuiteName, SuiteReport, CSV_HEADER, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

pub const THREADS_ENV: &str = "ORLICZ_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "orlicz-lab", version, about = "Hardy-Orlicz and Bergman-Orlicz embedding diagnostics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the injection H^Psi -> B^Psi from growth evidence.
    Classify(ClassifyArgs),
    /// Compute a Luxemburg norm.
    Norm(NormArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Classification plus the function-dependent suites in one document.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Space {
    /// Sup over radii of circle norms.
    Hardy,
    /// Normalized area measure on the disk.
    Bergman,
    /// The unit circle only.
    Circle,
    /// Area measure at a configurable resolution.
    Disk,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Defaults to text on a terminal and json otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    /// Spec as JSON, shorthand (`power:2`) or `@path` to a JSON file.
    #[arg(long, short)]
    pub function: String,
    #[arg(long)]
    pub x_min: Option<f64>,
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long, default_value_t = 400)]
    pub points: usize,
    /// Amplification factors; must include 1.5, 2, 4, 8.
    #[arg(long, value_delimiter = ',')]
    pub a: Option<Vec<f64>>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct NormArgs {
    #[arg(long, value_enum)]
    pub space: Space,
    #[arg(long, short)]
    pub function: String,
    /// Function form as JSON or shorthand (`monomial:3`, `const:2`, `poly:1,0,2`, `kernel_squared:h=0.03125`).
    #[arg(long, short)]
    pub input: String,
    #[arg(long)]
    pub n_theta: Option<usize>,
    #[arg(long)]
    pub n_radial: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// all, contraction, carleson, monomial, kernel, evaluation, counterexample or order.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Kernel widths for the kernel suite.
    #[arg(long, value_delimiter = ',')]
    pub h: Option<Vec<f64>>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Orlicz function for the single-function suites.
    #[arg(long, short)]
    pub function: Option<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[arg(long, short)]
    pub function: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
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
    configure_threads();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("orlicz-lab: {e}");
            match e {
                Error::Io(_) => EXIT_FAIL,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

pub fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Norm(a) => cmd_norm(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Report(a) => cmd_report(a),
    }
}

/// Reads a function spec from inline JSON, shorthand, or `@file`.
pub fn load_function_spec(s: &str) -> Result<FunctionSpec> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)?.parse(),
        None => s.parse(),
    }
}

fn resolve_format(f: Option<Format>, to_file: bool) -> Format {
    f.unwrap_or(if !to_file && std::io::stdout().is_terminal() { Format::Text } else { Format::Json })
}

/// Writes through a sibling temp file and a rename, or to stdout.
fn emit(out: &OutputArgs, body: &[u8]) -> Result<()> {
    match &out.output {
        Some(path) => write_atomic(path, body),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(body)?;
            so.flush()?;
            Ok(())
        }
    }
}

fn write_atomic(path: &Path, body: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, body)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn json_line<T: Serialize>(v: &T) -> Result<Vec<u8>> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn classification_grid(psi: &OrliczFunction, a: &ClassifyArgs) -> Result<GrowthSampleGrid> {
    let mut grid = GrowthSampleGrid::default_for(psi);
    if a.x_min.is_some() || a.x_max.is_some() || a.points != 400 {
        let lo = a.x_min.unwrap_or(grid.x_points[0]);
        let hi = a.x_max.unwrap_or(*grid.x_points.last().expect("non-empty grid"));
        grid = GrowthSampleGrid::geometric(lo, hi, a.points, DEFAULT_A_POINTS.to_vec())?.with_knots(psi);
    }
    if let Some(points) = &a.a {
        grid = grid.with_a_points(points.clone())?;
    }
    Ok(grid)
}

pub fn verdict_exit(v: Verdict) -> i32 {
    if v == Verdict::Inconclusive {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

pub fn injection_text(r: &InjectionReport) -> String {
    let mut s = format!("function: {}\nverdict: {:?} ({})\n", family_label(&r.function), r.verdict, r.evidence_kind);
    s += &format!("grid: [{:e}, {:e}], {} points\n", r.grid_range.0, r.grid_range.1, r.grid_points);
    for q in &r.q_a_table {
        s += &format!("  Q_A at A = {}: trend {:?} (slope {:.4}), tail sup ln = {:.4}\n", q.a, q.trend, q.trend_slope, q.tail_sup_log);
    }
    for c in r.conditions.iter().chain(std::iter::once(&r.conjugate_delta2)) {
        s += &format!("  {:?}: {:?}", c.condition, c.holds);
        if let Some(p) = c.parameter {
            s += &format!(" (parameter {p})");
        }
        s.push('\n');
    }
    s += &format!("  Morse-Transue inclusion: {}\n", r.consequences.morse_transue_inclusion);
    s += &format!("  {}\n", r.consequences.dunford_pettis_note);
    for n in &r.notes {
        s += &format!("  note: {n}\n");
    }
    s
}

fn family_label(f: &Family) -> String {
    serde_json::to_string(f).unwrap_or_else(|_| format!("{f:?}"))
}

pub fn cmd_classify(a: &ClassifyArgs) -> Result<i32> {
    let psi = load_function_spec(&a.function)?.build()?;
    let grid = classification_grid(&psi, a)?;
    let report = classify_injection(&psi, &grid)?;
    let body = match resolve_format(a.out.format, a.out.output.is_some()) {
        Format::Json => json_line(&report)?,
        Format::Text => injection_text(&report).into_bytes(),
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_q_a_csv(&mut buf)?;
            buf
        }
    };
    emit(&a.out, &body)?;
    Ok(verdict_exit(report.verdict))
}

#[derive(Debug, Clone, Serialize)]
pub struct NormOutput {
    pub space: String,
    pub function: Family,
    pub input: FunctionInput,
    pub result: NormResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argmax_radius: Option<f64>,
}

pub fn cmd_norm(a: &NormArgs) -> Result<i32> {
    let psi = load_function_spec(&a.function)?.build()?;
    let input: FunctionInput = a.input.parse()?;
    let f = input.build(&psi)?;
    let resolution = |dom: MeasureDomain| -> Result<MeasureDomain> {
        let (nr, nt) = (a.n_radial.unwrap_or(dom.n_radial), a.n_theta.unwrap_or(dom.n_theta));
        dom.with_resolution(nr, nt)
    };
    let (space, result, argmax) = match a.space {
        Space::Hardy => {
            let h = hardy_norm(&f, &psi, None)?;
            ("hardy", h.result, Some(h.argmax_radius))
        }
        Space::Bergman if a.n_theta.is_none() && a.n_radial.is_none() => ("bergman", bergman_norm(&f, &psi), None),
        Space::Bergman | Space::Disk => ("disk", luxemburg_norm(&f, &psi, &resolution(MeasureDomain::disk())?), None),
        Space::Circle => ("circle", luxemburg_norm(&f, &psi, &resolution(MeasureDomain::circle())?), None),
    };
    let converged = result.converged;
    let out = NormOutput { space: space.into(), function: psi.family().clone(), input, result, argmax_radius: argmax };
    let body = match resolve_format(a.out.format, a.out.output.is_some()) {
        Format::Json => json_line(&out)?,
        Format::Text => format!(
            "{:.15e}\n  space {space}, bracket [{:e}, {:e}], modular {:.3e}, iterations {}, converged {}\n",
            out.result.value, out.result.bracket.0, out.result.bracket.1, out.result.modular_at_value, out.result.bisection_iters, converged
        )
        .into_bytes(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["space", "value", "lower", "upper", "converged"])?;
            w.write_record([
                space.to_string(),
                out.result.value.to_string(),
                out.result.bracket.0.to_string(),
                out.result.bracket.1.to_string(),
                converged.to_string(),
            ])?;
            w.into_inner().map_err(|e| Error::Io(e.into_error()))?
        }
    };
    emit(&a.out, &body)?;
    Ok(if converged { EXIT_OK } else { EXIT_INCONCLUSIVE })
}

fn reports_body(reports: &[SuiteReport], many: bool, fmt: Format) -> Result<Vec<u8>> {
    Ok(match fmt {
        Format::Json if many => json_line(&reports)?,
        Format::Json => json_line(&reports[0])?,
        Format::Text => reports.iter().map(|r| r.to_text()).collect::<String>().into_bytes(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for r in reports {
                r.write_csv(&mut w)?;
            }
            w.into_inner().map_err(|e| Error::Io(e.into_error()))?
        }
    })
}

pub fn parse_suites(name: &str) -> Result<Vec<SuiteName>> {
    if name == "all" {
        Ok(SuiteName::ALL.to_vec())
    } else {
        Ok(vec![name.parse()?])
    }
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let names = parse_suites(&a.suite)?;
    let function = a.function.as_deref().map(load_function_spec).transpose()?;
    let cfg = BatteryConfig { seed: a.seed, kernel_h: a.h.clone(), function };
    let reports = suites::run_suites(&names, &cfg)?;
    let body = reports_body(&reports, a.suite == "all", resolve_format(a.out.format, a.out.output.is_some()))?;
    emit(&a.out, &body)?;
    Ok(if reports.iter().all(|r| r.overall_pass) { EXIT_OK } else { EXIT_FAIL })
}

#[derive(Debug, Clone, Serialize)]
pub struct FullReport {
    pub classification: InjectionReport,
    pub suites: Vec<SuiteReport>,
}

pub fn cmd_report(a: &ReportArgs) -> Result<i32> {
    let spec = load_function_spec(&a.function)?;
    let psi = spec.build()?;
    let classification = classify_injection(&psi, &GrowthSampleGrid::default_for(&psi))?;
    let mut names = vec![SuiteName::Monomial, SuiteName::Evaluation, SuiteName::Order];
    if matches!(psi.family(), Family::PaperCounterexample { .. }) {
        names.push(SuiteName::Counterexample);
    }
    let cfg = BatteryConfig { seed: a.seed, kernel_h: None, function: Some(spec) };
    let suites = suites::run_suites(&names, &cfg)?;
    let code = if !suites.iter().all(|r| r.overall_pass) { EXIT_FAIL } else { verdict_exit(classification.verdict) };
    let report = FullReport { classification, suites };
    let body = match resolve_format(a.out.format, a.out.output.is_some()) {
        Format::Json => json_line(&report)?,
        Format::Text => {
            let mut s = injection_text(&report.classification);
            for r in &report.suites {
                s += &r.to_text();
            }
            s.into_bytes()
        }
        Format::Csv => reports_body(&report.suites, true, Format::Csv)?,
    };
    emit(&a.out, &body)?;
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(args: &[&str]) -> i32 {
        run_from(std::iter::once("orlicz-lab").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors() {
        assert_eq!(code(&["verify", "--suite", "bogus", "--format", "json"]), EXIT_USAGE);
        assert_eq!(code(&["classify", "--function", "{\"family\":\"nope\"}", "--format", "json"]), EXIT_USAGE);
        assert_eq!(code(&["frobnicate"]), EXIT_USAGE);
    }

    #[test]
    fn spec_loading() {
        assert_eq!(load_function_spec("power:2").unwrap(), FunctionSpec::Power { p: 2.0 });
        assert!(load_function_spec("@/nonexistent/spec.json").is_err());
        assert_eq!(parse_suites("all").unwrap().len(), 7);
    }
}
