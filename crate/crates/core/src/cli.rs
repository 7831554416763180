//! The `qhk` command line.
//!
//! Exit status is 0 when every requested check passes, 1 when a table,
//! cocycle or mathematical check fails, and 2 on usage errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::chain::{ChainComplex, ChainError, Coefficients, Theory, DEFAULT_BASIS_BUDGET};
use crate::extension::extend;
use crate::homotopy::{
    diagnose_cancellation, verify_all_identities_with_budget, verify_annihilation_pipeline_with_budget,
    AnnihilationReport, DegreeCheck, HomotopyError, Witness,
};
use crate::io::{
    format_matrix, format_table, load_cocycle, load_table, parse_builtin, Format, HomologyReport, HomotopyReport,
    Report,
};
use crate::quandle::{aq_profile, inner_group, is_connected, is_quasigroup, orbits, AnnihilationBound, QuandleTable};

#[derive(Debug, Clone, Parser)]
#[command(name = "qhk", version, about = "Rack and quandle homology, classification and homotopy checks")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
    /// Largest basis size in any degree; overrides QHK_BUDGET.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

/// Exactly one of a table file or a builtin spec.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Table file (first line n, then n rows of 1-based entries).
    pub table: Option<PathBuf>,
    /// Builtin quandle such as `dihedral:7`, `alexander:8,3`,
    /// `conjclass:5,[2,2,1]`, `takasaki:2,2`, `trivial:4`, `qs6`, `r3xt2`, `q12_10`.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Validate and classify: orbits, connectivity, quasigroup, m-AQ profile, |Inn|.
    Check {
        #[command(flatten)]
        input: Input,
    },
    /// Homology groups in degrees 1..=max-dim.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "R")]
        theory: Theory,
        #[arg(long, value_parser = degree_bound)]
        max_dim: usize,
        /// Coefficients in Z_p instead of Z.
        #[arg(long = "mod")]
        modulus: Option<u32>,
    },
    /// Check the four homotopy identities tuple by tuple up to max-dim.
    VerifyHomotopies {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = degree_bound)]
        max_dim: usize,
    },
    /// Identities plus torsion annihilation by N = m lcm(|X|, |X|-m).
    Annihilation {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = degree_bound)]
        max_dim: usize,
    },
    /// Build the extension described by a cocycle file and print its table.
    Extend {
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Print a boundary matrix in coordinate format.
    ExportMatrix {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "R")]
        theory: Theory,
    },
}

fn degree_bound(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("{s:?} is not a degree bound >= 1")),
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Exit status 2.
    Usage(String),
    /// Exit status 1.
    Failure(String),
}

impl CliError {
    pub fn status(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) | CliError::Failure(s) => f.write_str(s),
        }
    }
}

fn fail(e: impl std::fmt::Display) -> CliError {
    CliError::Failure(e.to_string())
}

/// Rendered output and whether every check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub quandle: String,
    pub size: usize,
    pub kind: crate::quandle::Kind,
    /// 1-based orbit blocks.
    pub orbits: Vec<Vec<usize>>,
    pub connected: bool,
    pub quasigroup: bool,
    pub aq: Option<AqSummary>,
    pub inn_order: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AqSummary {
    pub m: usize,
    pub trivial_stabilizers: bool,
    pub annihilation_bound: AnnihilationBound,
}

impl Report for CheckReport {
    fn to_text(&self) -> String {
        let mut s = format!("{}: {} elements ({:?})\n", self.quandle, self.size, self.kind);
        s += &format!("orbits: {} {:?}\n", self.orbits.len(), self.orbits);
        s += &format!("connected: {}\nquasigroup: {}\n", self.connected, self.quasigroup);
        match &self.aq {
            Some(aq) => {
                let bound = match aq.annihilation_bound {
                    AnnihilationBound::Bound(n) => n.to_string(),
                    AnnihilationBound::TorsionFree => "torsion free".to_string(),
                };
                s += &format!(
                    "m-AQ: m = {}, trivial stabilizers: {}, N = {bound}\n",
                    aq.m, aq.trivial_stabilizers
                );
            }
            None => s += "m-AQ: no\n",
        }
        s += &format!("|Inn| = {}\n", self.inn_order);
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HomotopySuite {
    pub quandle: String,
    pub reports: Vec<HomotopyReport>,
    pub passed: bool,
}

impl Report for HomotopySuite {
    fn to_text(&self) -> String {
        let mut s = self.reports.to_text();
        s += if self.passed { "all identities hold\n" } else { "some identities FAIL\n" };
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnnihilationOutput {
    pub quandle: String,
    pub m: usize,
    pub bound: AnnihilationBound,
    pub identities: Vec<HomotopyReport>,
    pub degrees: Vec<DegreeCheck>,
    pub passed: bool,
}

impl AnnihilationOutput {
    fn new(quandle: &str, r: AnnihilationReport) -> Self {
        let passed = r.passed();
        AnnihilationOutput {
            quandle: quandle.to_string(),
            m: r.m,
            bound: r.bound,
            identities: r.identities.into_iter().map(|i| HomotopyReport::new(quandle, i)).collect(),
            degrees: r.degrees,
            passed,
        }
    }
}

impl Report for AnnihilationOutput {
    fn to_text(&self) -> String {
        let bound = match self.bound {
            AnnihilationBound::Bound(n) => format!("N = {n}"),
            AnnihilationBound::TorsionFree => "torsion free".to_string(),
        };
        let held = self.identities.iter().filter(|r| r.holds()).count();
        let mut s = format!("{}: m = {}, {bound}\n", self.quandle, self.m);
        s += &format!("identities: {held}/{} hold\n", self.identities.len());
        for d in &self.degrees {
            let mark = if d.annihilated { "ok" } else { "FAIL" };
            s += &format!("H_{}^{} = {}  {mark}\n", d.degree, d.theory, d.group);
        }
        s += if self.passed { "pass\n" } else { "FAIL\n" };
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Diagnostic {
    pub quandle: String,
    pub error: String,
    pub degree: usize,
    pub j: usize,
    pub witness: Option<Witness>,
}

impl Report for Diagnostic {
    fn to_text(&self) -> String {
        let mut s = format!("{}: {}\n", self.quandle, self.error);
        match &self.witness {
            Some(w) => {
                s += &format!(
                    "face j+1 cancellation breaks at n={} j={}: tuple {:?}, residual {:?}\n",
                    self.degree, self.j, w.tuple, w.residual
                )
            }
            None => s += &format!("face j+1 cancellation holds at n={} j={}\n", self.degree, self.j),
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtendReport {
    pub base_size: usize,
    pub fiber_size: usize,
    pub size: usize,
    pub orbits: usize,
    pub connected: bool,
    pub aq_m: Option<usize>,
    /// 1-based rows.
    pub table: Vec<Vec<usize>>,
    #[serde(skip)]
    text: String,
}

impl Report for ExtendReport {
    fn to_text(&self) -> String {
        self.text.clone()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixReport {
    pub quandle: String,
    pub theory: Theory,
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub nnz: usize,
    /// 1-based `(i, j, v)`.
    pub entries: Vec<(usize, usize, i64)>,
    #[serde(skip)]
    text: String,
}

impl Report for MatrixReport {
    fn to_text(&self) -> String {
        self.text.clone()
    }
}

fn resolve_budget(config: &RunConfig) -> Result<usize, CliError> {
    if let Some(b) = config.budget {
        return Ok(b);
    }
    match std::env::var("QHK_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("QHK_BUDGET={v:?} is not a count"))),
        Err(_) => Ok(DEFAULT_BASIS_BUDGET),
    }
}

fn load_input(input: &Input) -> Result<(String, QuandleTable), CliError> {
    match (&input.table, &input.builtin) {
        (Some(path), None) => Ok((display_name(path), load_table(path).map_err(fail)?)),
        (None, Some(spec)) => Ok((spec.clone(), parse_builtin(spec).map_err(fail)?)),
        _ => Err(CliError::Usage("give exactly one of a table file or --builtin".into())),
    }
}

fn display_name(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn emit(report: &impl Report, config: &RunConfig, passed: bool) -> Outcome {
    let format = if config.json { Format::Json } else { Format::Text };
    Outcome { output: report.render(format), passed }
}

/// Runs one command and renders its report; `--output` is handled by
/// [`main_with_args`].
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let budget = resolve_budget(config)?;
    let job = || run_command(config, budget);
    match config.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build()
            .map_err(fail)?
            .install(job),
        None => job(),
    }
}

fn run_command(config: &RunConfig, budget: usize) -> Result<Outcome, CliError> {
    match &config.command {
        Command::Check { input } => {
            let (name, q) = load_input(input)?;
            let aq = aq_profile(&q).map(|p| AqSummary {
                m: p.m,
                trivial_stabilizers: p.trivial_stabilizers,
                annihilation_bound: p.annihilation_bound,
            });
            let report = CheckReport {
                quandle: name,
                size: q.size(),
                kind: q.kind(),
                orbits: orbits(&q).blocks.iter().map(|b| b.iter().map(|x| x + 1).collect()).collect(),
                connected: is_connected(&q),
                quasigroup: is_quasigroup(&q),
                aq,
                inn_order: inner_group(&q).map_err(fail)?.order,
            };
            Ok(emit(&report, config, true))
        }
        Command::Homology { input, theory, max_dim, modulus } => {
            let (name, q) = load_input(input)?;
            let complex = ChainComplex::new(&q, *theory).map_err(fail)?.with_budget(budget);
            let coefficients = modulus.map_or(Coefficients::Integers, Coefficients::Prime);
            let groups = complex.sweep(*max_dim, coefficients).map_err(fail)?;
            let reports: Vec<HomologyReport> = groups
                .into_iter()
                .enumerate()
                .map(|(i, (g, t))| HomologyReport {
                    quandle: name.clone(),
                    theory: *theory,
                    degree: i + 1,
                    modulus: *modulus,
                    rank: g.rank,
                    torsion: g.torsion,
                    elapsed_ms: t.as_millis() as u64,
                })
                .collect();
            Ok(emit(&reports, config, true))
        }
        Command::VerifyHomotopies { input, max_dim } => {
            let (name, q) = load_input(input)?;
            let profile = aq_profile(&q).ok_or_else(|| fail(HomotopyError::NotAq))?;
            match verify_all_identities_with_budget(&q, &profile, *max_dim, budget) {
                Ok(reports) => {
                    let reports: Vec<HomotopyReport> =
                        reports.into_iter().map(|r| HomotopyReport::new(&name, r)).collect();
                    let passed = reports.iter().all(HomotopyReport::holds);
                    Ok(emit(&HomotopySuite { quandle: name, reports, passed }, config, passed))
                }
                Err(e @ HomotopyError::HypothesisFail) => {
                    // report where the proof's cancellation step first breaks
                    let mut found = None;
                    'search: for n in 1..=*max_dim {
                        for j in 1..=n {
                            if let Some(w) = diagnose_cancellation(&q, &profile, n, j).map_err(fail)? {
                                found = Some((n, j, w));
                                break 'search;
                            }
                        }
                    }
                    let (degree, j, witness) = match found {
                        Some((n, j, w)) => (n, j, Some(w)),
                        None => (*max_dim, 1, None),
                    };
                    let diag = Diagnostic { quandle: name, error: e.to_string(), degree, j, witness };
                    Ok(emit(&diag, config, false))
                }
                Err(e) => Err(fail(e)),
            }
        }
        Command::Annihilation { input, max_dim } => {
            let (name, q) = load_input(input)?;
            let profile = aq_profile(&q).ok_or_else(|| fail(HomotopyError::NotAq))?;
            let report = verify_annihilation_pipeline_with_budget(&q, &profile, *max_dim, budget).map_err(fail)?;
            let out = AnnihilationOutput::new(&name, report);
            let passed = out.passed;
            Ok(emit(&out, config, passed))
        }
        Command::Extend { cocycle } => {
            let spec = load_cocycle(cocycle).map_err(fail)?;
            let y = extend(&spec).map_err(fail)?;
            let report = ExtendReport {
                base_size: spec.base().size(),
                fiber_size: spec.fiber_size(),
                size: y.size(),
                orbits: orbits(&y).count(),
                connected: is_connected(&y),
                aq_m: aq_profile(&y).map(|p| p.m),
                table: y.rows().iter().map(|r| r.iter().map(|v| v + 1).collect()).collect(),
                text: format_table(&y),
            };
            Ok(emit(&report, config, true))
        }
        Command::ExportMatrix { input, dim, theory } => {
            let (name, q) = load_input(input)?;
            let complex = ChainComplex::new(&q, *theory).map_err(fail)?.with_budget(budget);
            let m = complex.boundary(*dim).map_err(|e: ChainError| fail(e))?;
            let report = MatrixReport {
                quandle: name,
                theory: *theory,
                degree: *dim,
                rows: m.rows(),
                cols: m.cols(),
                nnz: m.nnz(),
                entries: m.triplets().map(|(i, j, v)| (i + 1, j + 1, v)).collect(),
                text: format_matrix(&m),
            };
            Ok(emit(&report, config, true))
        }
    }
}

/// Parses `args`, runs, writes the report and returns the exit status.
pub fn main_with_args<I, T>(args: I, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let started = Instant::now();
    match run(&config) {
        Ok(outcome) => {
            let written = match &config.output {
                Some(path) => std::fs::write(path, &outcome.output).map_err(|e| format!("{}: {e}", path.display())),
                None => stdout.write_all(outcome.output.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 1;
            }
            if !outcome.passed {
                let _ = writeln!(stderr, "check failed ({} ms)", started.elapsed().as_millis());
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.status()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["qhk"];
        full.extend_from_slice(args);
        let status = main_with_args(full, &mut out, &mut err);
        (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn check_builtin() {
        let (status, out, _) = run_args(&["check", "--builtin", "qs6"]);
        assert_eq!(status, 0);
        assert!(out.contains("m = 2"), "{out}");
        assert!(out.contains("|Inn| = 24"), "{out}");
        assert!(out.contains("connected: true"), "{out}");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["check"]).0, 2);
        assert_eq!(run_args(&["check", "t.qnd", "--builtin", "qs6"]).0, 2);
        assert_eq!(run_args(&["homology", "--builtin", "qs6", "--max-dim", "0"]).0, 2);
        assert_eq!(run_args(&["homology", "--builtin", "qs6", "--max-dim", "2", "--theory", "X"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
    }

    #[test]
    fn validation_failures_exit_one() {
        let (status, _, err) = run_args(&["check", "--builtin", "alexander:8,2"]);
        assert_eq!(status, 1);
        assert!(err.contains("not a unit"), "{err}");
        let (status, _, err) = run_args(&["check", "/nonexistent/table.qnd"]);
        assert_eq!(status, 1);
        assert!(err.contains("/nonexistent/table.qnd"), "{err}");
    }

    #[test]
    fn homology_of_r3() {
        let (status, out, _) = run_args(&["homology", "--builtin", "dihedral:3", "--theory", "Q", "--max-dim", "3"]);
        assert_eq!(status, 0);
        assert!(out.ends_with("H_3^Q(dihedral:3) = Z_3\n"), "{out}");
    }

    #[test]
    fn hypothesis_failure_reports_a_witness() {
        let (status, out, _) = run_args(&["verify-homotopies", "--builtin", "r3xt2", "--max-dim", "2", "--json"]);
        assert_eq!(status, 1);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["witness"]["tuple"].is_array(), "{out}");
    }

    #[test]
    fn budget_flag_is_honoured() {
        let (status, _, err) = run_args(&["homology", "--builtin", "qs6", "--max-dim", "3", "--budget", "100"]);
        assert_eq!(status, 1);
        assert!(err.contains("budget"), "{err}");
    }
}
