//! Text formats: quandle tables, cocycle files, builtin specs, matrix export
//! and reports.
//!
//! Table file: first non-comment line is `n`, followed by `n` rows of `n`
//! 1-based entries (row `a` lists `a*1 ... a*n`). Lines starting with `#`
//! are comments.
//!
//! Cocycle file:
//!
//! ```text
//! base builtin:dihedral:3      # or a table path, relative to this file
//! fiber 2
//! 1 2 : 1 2 | 2 1              # alpha_(1,2); row s lists alpha(s, 1..|S|)
//! ```
//!
//! with one line for each of the `|X|^2` pairs `(a, b)`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::chain::{AbelianGroup, SparseIntMatrix, Theory};
use crate::extension::{CocycleSpec, ExtensionError};
use crate::homotopy::{Family, IdentityReport, Witness};
use crate::quandle::{
    corpus, make_alexander, make_conjugation_class, make_takasaki, make_trivial, ConstructError, Kind, QuandleTable,
    TableError,
};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{}: {source}", .path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid table: {0}")]
    Table(#[from] TableError),
    #[error("bad builtin {spec:?}: {message}")]
    Builtin { spec: String, message: String },
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse { line, message: message.into() }
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, contents: &str) -> Result<(), IoError> {
    std::fs::write(path, contents).map_err(|source| IoError::Io { path: path.to_path_buf(), source })
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn numbers(line: usize, s: &str) -> Result<Vec<i64>, IoError> {
    s.split_whitespace()
        .map(|w| w.parse::<i64>().map_err(|_| parse_err(line, format!("{w:?} is not an integer"))))
        .collect()
}

/// Parses a table file. Idempotent tables load as quandles, the rest as racks.
pub fn parse_table(text: &str) -> Result<QuandleTable, IoError> {
    let mut lines = content_lines(text);
    let last_line = text.lines().count().max(1);
    let (line, header) = lines.next().ok_or_else(|| parse_err(1, "empty file, expected the table size"))?;
    let n: usize = match header.parse() {
        Ok(n) if n > 0 => n,
        _ => return Err(parse_err(line, format!("expected a positive table size, found {header:?}"))),
    };
    let mut rows = Vec::with_capacity(n);
    for row in 1..=n {
        let (line, s) = lines
            .next()
            .ok_or_else(|| parse_err(last_line, format!("missing row {row} (expected {n} rows, found {})", row - 1)))?;
        let values = numbers(line, s)?;
        if values.len() != n {
            return Err(parse_err(line, format!("row {row} has {} entries, expected {n}", values.len())));
        }
        if let Some(&v) = values.iter().find(|&&v| v < 1 || v > n as i64) {
            return Err(parse_err(line, format!("entry {v} in row {row} is out of range 1..={n}")));
        }
        rows.push(values.into_iter().map(|v| v - 1).collect::<Vec<i64>>());
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, format!("unexpected content after {n} rows")));
    }
    match QuandleTable::validate(&rows, Kind::Quandle) {
        Err(TableError::IdempotencyFail(_)) => Ok(QuandleTable::validate(&rows, Kind::Rack)?),
        other => Ok(other?),
    }
}

pub fn load_table(path: impl AsRef<Path>) -> Result<QuandleTable, IoError> {
    parse_table(&read(path.as_ref())?)
}

/// Renders `q` in the table file format.
pub fn format_table(q: &QuandleTable) -> String {
    let n = q.size();
    let width = n.to_string().len();
    let mut out = format!("{n}\n");
    for a in 0..n {
        let row: Vec<String> = q.row(a).iter().map(|v| format!("{:>width$}", v + 1)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn save_table(q: &QuandleTable, path: impl AsRef<Path>) -> Result<(), IoError> {
    write(path.as_ref(), &format_table(q))
}

/// Builds a quandle from `family:params`, for example `dihedral:7`,
/// `alexander:8,3`, `conjclass:5,[2,2,1]`, `takasaki:2,2`, `trivial:4`, or
/// one of the bundled tables `qs6`, `r3xt2`, `q12_10`.
pub fn parse_builtin(spec: &str) -> Result<QuandleTable, IoError> {
    let bad = |message: &str| IoError::Builtin { spec: spec.to_string(), message: message.to_string() };
    let (family, params) = spec.split_once(':').unwrap_or((spec, ""));
    let ints = |s: &str| -> Result<Vec<usize>, IoError> {
        s.split(',')
            .map(|w| w.trim().trim_matches(|c| c == '[' || c == ']'))
            .filter(|w| !w.is_empty())
            .map(|w| w.parse::<usize>().map_err(|_| bad(&format!("{w:?} is not a non-negative integer"))))
            .collect()
    };
    let one = |s: &str| -> Result<usize, IoError> {
        match ints(s)?.as_slice() {
            [n] => Ok(*n),
            _ => Err(bad("expected exactly one parameter")),
        }
    };
    let no_params = || if params.is_empty() { Ok(()) } else { Err(bad("takes no parameters")) };
    let q = match family {
        "trivial" => make_trivial(one(params)?)?,
        "dihedral" => make_takasaki(&[one(params)?])?,
        "takasaki" => make_takasaki(&ints(params)?)?,
        "alexander" => match ints(params)?.as_slice() {
            [n, t] => make_alexander(*n, *t as i64)?,
            _ => return Err(bad("expected alexander:n,t")),
        },
        "conjclass" => {
            let (degree, parts) = params.split_once(',').ok_or_else(|| bad("expected conjclass:d,[c1,...]"))?;
            make_conjugation_class(one(degree)?, &ints(parts)?)?
        }
        "qs6" => {
            no_params()?;
            corpus::qs6()
        }
        "r3xt2" => {
            no_params()?;
            corpus::r3_x_t2()
        }
        "q12_10" => {
            no_params()?;
            corpus::q12_10()
        }
        _ => return Err(bad("unknown family")),
    };
    Ok(q)
}

/// Parses a cocycle file; `base` paths are resolved against `dir`.
pub fn parse_cocycle(text: &str, dir: &Path) -> Result<CocycleSpec, IoError> {
    let mut lines = content_lines(text);
    let (line, base_line) = lines.next().ok_or_else(|| parse_err(1, "empty file, expected a base line"))?;
    let base_ref = base_line
        .strip_prefix("base")
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| parse_err(line, "expected `base <table file>` or `base builtin:<spec>`"))?;
    let base = match base_ref.strip_prefix("builtin:") {
        Some(spec) => parse_builtin(spec)?,
        None => load_table(dir.join(base_ref))?,
    };
    let (line, fiber_line) = lines.next().ok_or_else(|| parse_err(line, "missing `fiber <size>` line"))?;
    let f: usize = fiber_line
        .strip_prefix("fiber")
        .and_then(|s| s.trim().parse().ok())
        .filter(|&f| f > 0)
        .ok_or_else(|| parse_err(line, "expected `fiber <positive size>`"))?;
    let n = base.size();
    let mut alpha = vec![None; n * n * f * f];
    let mut seen = vec![false; n * n];
    for (line, s) in lines {
        let (pair, grid) = s.split_once(':').ok_or_else(|| parse_err(line, "expected `a b : grid`"))?;
        let (a, b) = match numbers(line, pair)?.as_slice() {
            &[a, b] if (1..=n as i64).contains(&a) && (1..=n as i64).contains(&b) => ((a - 1) as usize, (b - 1) as usize),
            _ => return Err(parse_err(line, format!("expected a pair of base elements in 1..={n}"))),
        };
        if std::mem::replace(&mut seen[a * n + b], true) {
            return Err(parse_err(line, format!("pair ({}, {}) given twice", a + 1, b + 1)));
        }
        let rows: Vec<&str> = grid.split('|').collect();
        if rows.len() != f {
            return Err(parse_err(line, format!("grid has {} rows, expected {f}", rows.len())));
        }
        for (s_idx, row) in rows.iter().enumerate() {
            let values = numbers(line, row)?;
            if values.len() != f {
                return Err(parse_err(line, format!("grid row {} has {} entries, expected {f}", s_idx + 1, values.len())));
            }
            for (t, &v) in values.iter().enumerate() {
                if !(1..=f as i64).contains(&v) {
                    return Err(parse_err(line, format!("value {v} is outside the fiber 1..={f}")));
                }
                alpha[((a * n + b) * f + s_idx) * f + t] = Some(v as usize - 1);
            }
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        let line = text.lines().count().max(1);
        return Err(parse_err(line, format!("missing grid for pair ({}, {})", i / n + 1, i % n + 1)));
    }
    let alpha = alpha.into_iter().map(|v| v.expect("every pair filled")).collect();
    Ok(CocycleSpec::new(base, f, alpha)?)
}

pub fn load_cocycle(path: impl AsRef<Path>) -> Result<CocycleSpec, IoError> {
    let path = path.as_ref();
    parse_cocycle(&read(path)?, path.parent().unwrap_or(Path::new(".")))
}

/// Renders `spec` in the cocycle file format with the given base reference.
pub fn format_cocycle(spec: &CocycleSpec, base_ref: &str) -> String {
    let (n, f) = (spec.base().size(), spec.fiber_size());
    let mut out = format!("base {base_ref}\nfiber {f}\n");
    for a in 0..n {
        for b in 0..n {
            let rows: Vec<String> = (0..f)
                .map(|s| (0..f).map(|t| (spec.alpha(a, b, s, t) + 1).to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            let _ = writeln!(out, "{} {} : {}", a + 1, b + 1, rows.join(" | "));
        }
    }
    out
}

/// Coordinate format: `rows cols nnz`, then one 1-based `i j v` per entry in
/// column-major order.
pub fn format_matrix(m: &SparseIntMatrix) -> String {
    let mut out = format!("{} {} {}\n", m.rows(), m.cols(), m.nnz());
    for (i, j, v) in m.triplets() {
        let _ = writeln!(out, "{} {} {}", i + 1, j + 1, v);
    }
    out
}

/// Reverses [`format_matrix`].
pub fn parse_matrix(text: &str) -> Result<SparseIntMatrix, IoError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| parse_err(1, "empty file, expected `rows cols nnz`"))?;
    let (rows, cols, nnz) = match numbers(line, header)?.as_slice() {
        &[r, c, z] if r >= 0 && c >= 0 && z >= 0 => (r as usize, c as usize, z as usize),
        _ => return Err(parse_err(line, "expected `rows cols nnz`")),
    };
    let mut triplets = Vec::with_capacity(nnz);
    for (line, s) in lines {
        match numbers(line, s)?.as_slice() {
            &[i, j, v] if (1..=rows as i64).contains(&i) && (1..=cols as i64).contains(&j) => {
                triplets.push((i as usize - 1, j as usize - 1, v))
            }
            _ => return Err(parse_err(line, "expected an in-range `i j v` entry")),
        }
    }
    if triplets.len() != nnz {
        return Err(parse_err(text.lines().count(), format!("header promises {nnz} entries, found {}", triplets.len())));
    }
    Ok(SparseIntMatrix::from_triplets(rows, cols, triplets))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Something the CLI can print as text or JSON.
pub trait Report: Serialize {
    fn to_text(&self) -> String;

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
        }
    }
}

impl<R: Report> Report for Vec<R> {
    fn to_text(&self) -> String {
        self.iter().map(Report::to_text).collect()
    }
}

pub fn save_report(report: &impl Report, path: impl AsRef<Path>, format: Format) -> Result<(), IoError> {
    write(path.as_ref(), &report.render(format))
}

/// One homology group. `elapsed_ms` is the only field that varies between runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub quandle: String,
    pub theory: Theory,
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u32>,
    pub rank: usize,
    pub torsion: Vec<u64>,
    pub elapsed_ms: u64,
}

impl HomologyReport {
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup { rank: self.rank, torsion: self.torsion.clone() }
    }
}

impl Report for HomologyReport {
    fn to_text(&self) -> String {
        let coeff = self.modulus.map_or(String::new(), |p| format!("; Z_{p}"));
        format!("H_{}^{}({}{}) = {}\n", self.degree, self.theory, self.quandle, coeff, self.group())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomotopyReport {
    pub quandle: String,
    pub family: Family,
    pub degree: usize,
    pub j: usize,
    pub tuples_checked: usize,
    pub max_residual: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl HomotopyReport {
    pub fn new(quandle: &str, r: IdentityReport) -> Self {
        HomotopyReport {
            quandle: quandle.to_string(),
            family: r.family,
            degree: r.degree,
            j: r.j,
            tuples_checked: r.tuples_checked,
            max_residual: r.max_residual,
            witness: r.witness,
        }
    }

    pub fn holds(&self) -> bool {
        self.max_residual == 0
    }
}

impl Report for HomotopyReport {
    fn to_text(&self) -> String {
        let status = if self.holds() { "ok" } else { "FAIL" };
        let mut s = format!(
            "{} n={} j={}: {status} ({} tuples, max residual {})\n",
            self.family, self.degree, self.j, self.tuples_checked, self.max_residual
        );
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "  witness {:?}: {:?}", w.tuple, w.residual);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::quasigroup_by_trivial_cocycle;
    use crate::quandle::{aq_profile, make_dihedral};

    #[test]
    fn table_round_trip() {
        for q in [corpus::q12_10(), corpus::qs6(), make_dihedral(5).unwrap()] {
            assert_eq!(parse_table(&format_table(&q)).unwrap(), q);
        }
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# R3\n3\n\n1 3 2  # row 1\n3 2 1\n2 1 3\n";
        assert_eq!(parse_table(text).unwrap(), make_dihedral(3).unwrap());
    }

    #[test]
    fn rack_tables_load_as_racks() {
        let q = parse_table("2\n2 2\n1 1\n").unwrap();
        assert_eq!(q.kind(), Kind::Rack);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_table("").unwrap_err();
        assert!(matches!(e, IoError::Parse { line: 1, .. }), "{e}");
        let five_rows = "6\n1 1 6 5 3 4\n2 2 5 6 4 3\n5 6 3 3 2 1\n6 5 4 4 1 2\n4 3 1 2 5 5\n";
        let e = parse_table(five_rows).unwrap_err().to_string();
        assert!(e.contains("missing row 6"), "{e}");
        let e = parse_table("2\n1 x\n2 2\n").unwrap_err();
        assert!(matches!(e, IoError::Parse { line: 2, .. }));
        let e = parse_table("2\n1 3\n2 2\n").unwrap_err().to_string();
        assert!(e.contains("out of range"), "{e}");
        assert!(matches!(parse_table("2\n1 1\n1 2\n").unwrap_err(), IoError::Table(_)));
    }

    #[test]
    fn builtin_grammar() {
        assert_eq!(parse_builtin("dihedral:7").unwrap().size(), 7);
        assert_eq!(parse_builtin("alexander:8,3").unwrap().size(), 8);
        assert_eq!(parse_builtin("conjclass:5,[2,2,1]").unwrap().size(), 15);
        assert_eq!(parse_builtin("takasaki:2,2").unwrap().size(), 4);
        assert_eq!(parse_builtin("trivial:4").unwrap().size(), 4);
        assert_eq!(aq_profile(&parse_builtin("q12_10").unwrap()).unwrap().m, 3);
        for bad in ["dihedral", "dihedral:x", "nope:3", "qs6:1", "alexander:8", "trivial:0"] {
            assert!(parse_builtin(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn cocycle_round_trip() {
        let spec = quasigroup_by_trivial_cocycle(&make_dihedral(3).unwrap(), 2).unwrap();
        let text = format_cocycle(&spec, "builtin:trivial:2");
        assert_eq!(parse_cocycle(&text, Path::new(".")).unwrap(), spec);
    }

    #[test]
    fn cocycle_errors() {
        let e = parse_cocycle("base builtin:trivial:1\nfiber 2\n", Path::new(".")).unwrap_err().to_string();
        assert!(e.contains("missing grid for pair (1, 1)"), "{e}");
        let e = parse_cocycle("base builtin:trivial:1\nfiber 2\n1 1 : 1 2 | 2\n", Path::new(".")).unwrap_err();
        assert!(matches!(e, IoError::Parse { line: 3, .. }));
        let e = parse_cocycle("fiber 2\n", Path::new(".")).unwrap_err();
        assert!(matches!(e, IoError::Parse { line: 1, .. }));
    }

    #[test]
    fn matrix_round_trip() {
        let m = SparseIntMatrix::from_dense(&[vec![1i64, 0, -2], vec![0, 3, 0]]);
        let text = format_matrix(&m);
        assert!(text.starts_with("2 3 3\n1 1 1\n"));
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn homology_report_json_shape() {
        let r = HomologyReport {
            quandle: "qs6".into(),
            theory: Theory::Quandle,
            degree: 3,
            modulus: None,
            rank: 0,
            torsion: vec![24],
            elapsed_ms: 5,
        };
        let v: serde_json::Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["theory"], "Q");
        assert_eq!(v["torsion"][0], 24);
        assert!(v.get("modulus").is_none());
        assert_eq!(r.to_text(), "H_3^Q(qs6) = Z_24\n");
    }
}
