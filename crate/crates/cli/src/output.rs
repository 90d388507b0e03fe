//! Comma-separated tables with a commented header, written atomically.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};
use qbilliard::PhysicalUnits;

/// Physical dimension of a column, in the scenario's `ħ, μ, size` system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    Label,
    Pure,
    Length,
    Time,
    Energy,
    Momentum,
    AngularMomentum,
}

impl Dim {
    fn as_str(self) -> &'static str {
        match self {
            Dim::Label => "label",
            Dim::Pure => "1",
            Dim::Length => "length",
            Dim::Time => "time",
            Dim::Energy => "energy",
            Dim::Momentum => "momentum",
            Dim::AngularMomentum => "hbar",
        }
    }
}

/// Which columns make up the two-column gnuplot variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plot {
    pub x: usize,
    pub y: usize,
    /// Start a new data block (two blank lines) whenever this column changes.
    pub block_by: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<(String, Dim)>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
    pub plot: Option<Plot>,
}

impl Table {
    pub fn new(name: &str, columns: &[(&str, Dim)]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|&(c, d)| (c.to_string(), d)).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
            plot: None,
        }
    }

    pub fn with_plot(mut self, x: usize, y: usize) -> Self {
        self.plot = Some(Plot { x, y, block_by: None });
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|(c, _)| c == name)
    }

    /// Cells of one column parsed as numbers.
    pub fn numbers(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column(name)?;
        self.rows.iter().map(|r| r[i].parse().ok()).collect()
    }
}

/// Shortest round-trip decimal form.
pub fn num(v: f64) -> String {
    format!("{v}")
}

/// Provenance echoed at the top of every file.
#[derive(Debug, Clone, PartialEq)]
pub struct Header {
    pub command: String,
    pub geometry: String,
    pub input_sha256: String,
    pub units: PhysicalUnits,
}

impl Header {
    pub fn new(command: &str, geometry: &str, input: &[u8], units: PhysicalUnits) -> Self {
        Self {
            command: command.to_string(),
            geometry: geometry.to_string(),
            input_sha256: hex::encode(Sha256::digest(input)),
            units,
        }
    }

    fn lines(&self, table: &Table) -> Vec<String> {
        let u = &self.units;
        let mut out = vec![
            format!("# qbilliard {}", qbilliard::VERSION),
            format!("# command: {}", self.command),
            format!("# geometry: {}", self.geometry),
            format!("# scenario_sha256: {}", self.input_sha256),
            format!("# units: hbar={} mu={} size={}", num(u.hbar), num(u.mu), num(u.size)),
        ];
        let dims: Vec<String> = table
            .columns
            .iter()
            .map(|(c, d)| format!("{c}[{}]", d.as_str()))
            .collect();
        out.push(format!("# column_units: {}", dims.join(" ")));
        out.extend(table.notes.iter().map(|n| format!("# note: {n}")));
        out
    }

    pub fn render_csv(&self, table: &Table) -> String {
        let mut s = String::new();
        for l in self.lines(table) {
            s.push_str(&l);
            s.push('\n');
        }
        let names: Vec<&str> = table.columns.iter().map(|(c, _)| c.as_str()).collect();
        s.push_str(&names.join(","));
        s.push('\n');
        for r in &table.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    pub fn render_gnuplot(&self, table: &Table) -> Option<String> {
        let plot = table.plot.as_ref()?;
        let mut s = String::new();
        for l in self.lines(table) {
            s.push_str(&l);
            s.push('\n');
        }
        s.push_str(&format!("# {} {}\n", table.columns[plot.x].0, table.columns[plot.y].0));
        let mut block: Option<&str> = None;
        for r in &table.rows {
            if let Some(b) = plot.block_by {
                if block.is_some_and(|prev| prev != r[b]) {
                    s.push_str("\n\n");
                }
                if block != Some(r[b].as_str()) {
                    s.push_str(&format!("# {} = {}\n", table.columns[b].0, r[b]));
                }
                block = Some(r[b].as_str());
            }
            s.push_str(&format!("{} {}\n", r[plot.x], r[plot.y]));
        }
        Some(s)
    }
}

/// Write to a temporary sibling, then rename over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let file = path
        .file_name()
        .ok_or_else(|| CliError::io(path, std::io::Error::other("no file name")))?
        .to_string_lossy();
    let tmp = dir.join(format!(".{file}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(CliError::io(path, e));
    }
    Ok(())
}

/// Write every table as `<name>.csv`, plus `<name>.dat` when `gnuplot`.
pub fn write_tables(dir: &Path, header: &Header, tables: &[Table], gnuplot: bool) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::new();
    for t in tables {
        let path = dir.join(format!("{}.csv", t.name));
        write_atomic(&path, &header.render_csv(t))?;
        written.push(path);
        if gnuplot {
            if let Some(text) = header.render_gnuplot(t) {
                let path = dir.join(format!("{}.dat", t.name));
                write_atomic(&path, &text)?;
                written.push(path);
            }
        }
    }
    Ok(written)
}
