use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use crate::error::{Error, Result};
use crate::radial::TimeSeries;

/// 17 significant digits.
pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Write `#`-prefixed metadata, a header row and numeric rows.
pub fn write_csv(
    path: &Path,
    meta: &[(String, String)],
    columns: &[&str],
    rows: impl IntoIterator<Item = Vec<f64>>,
) -> Result<()> {
    let mut out = BufWriter::new(File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?);
    for (k, v) in meta {
        writeln!(out, "# {k} = {v}")?;
    }
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(columns).map_err(csv_err)?;
    for row in rows {
        if row.len() != columns.len() {
            return Err(Error::invalid(format!("row of {} values for {} columns", row.len(), columns.len())));
        }
        w.write_record(row.iter().map(|&v| fmt(v))).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Read one column of a CSV written by [`write_csv`] (or any CSV with a
/// header row and `#` comments) as a series against its first column.
/// `column = None` picks the second column.
pub fn read_series(path: &Path, column: Option<&str>) -> Result<TimeSeries> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let headers = r.headers().map_err(csv_err)?.clone();
    let idx = match column {
        Some(name) => headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::config("column", format!("no column `{name}` in {}", path.display())))?,
        None if headers.len() >= 2 => 1,
        None => return Err(Error::config("input", "need at least two columns")),
    };
    let (mut t, mut v) = (Vec::new(), Vec::new());
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let num = |i: usize| -> Result<f64> {
            let s = rec.get(i).unwrap_or("");
            s.parse().map_err(|_| Error::config("input", format!("`{s}` is not a number")))
        };
        t.push(num(0)?);
        v.push(num(idx)?);
    }
    TimeSeries::from_pairs(t, v)
}

/// Comparison of a computed number with a reference band.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub name: String,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

impl Verdict {
    pub fn pass(&self) -> bool {
        self.value >= self.lower && self.value <= self.upper
    }
}

/// Summary of one subcommand run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub subcommand: String,
    pub params: Vec<(String, String)>,
    pub headlines: Vec<(String, f64)>,
    pub verdicts: Vec<Verdict>,
    pub wall_time: Duration,
    pub files: Vec<PathBuf>,
}

impl RunReport {
    pub fn headline(&self, name: &str) -> Option<f64> {
        self.headlines.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(Verdict::pass)
    }

    pub fn render(&self) -> String {
        let mut s = format!("subcommand = {}\n", self.subcommand);
        for (k, v) in &self.params {
            s += &format!("param {k} = {v}\n");
        }
        for (k, v) in &self.headlines {
            s += &format!("{k} = {}\n", fmt(*v));
        }
        for v in &self.verdicts {
            let tag = if v.pass() { "PASS" } else { "FAIL" };
            s += &format!("{tag} {} = {} in [{}, {}]\n", v.name, fmt(v.value), v.lower, v.upper);
        }
        for f in &self.files {
            s += &format!("wrote {}\n", f.display());
        }
        s += &format!("wall_time_s = {:.3}\n", self.wall_time.as_secs_f64());
        s
    }
}
