//! Command-line front end for `qbilliard`.
//!
//! Scenarios are TOML files (see [`scenario`]); every subcommand reads
//! one and writes comma-separated tables into an output directory. Each
//! file opens with a `#` comment block giving the library version, the
//! SHA-256 of the input file and the `ħ, μ, size` units block.
//!
//! Exit codes: 0 success, 1 validation, 2 numeric accuracy, 3 I/O.

pub mod commands;
pub mod error;
pub mod model;
pub mod output;
pub mod scenario;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use error::{CliError, Result};
use model::Model;
use output::{write_tables, Header};
use scenario::{GeometryKind, Scenario, ScenarioFile};

#[derive(Debug, Parser)]
#[command(name = "qbilliard", version, about = "Wave packets in quantum billiards")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Common {
    /// Scenario or geometry file.
    pub file: PathBuf,
    /// Output directory.
    #[arg(long, short, default_value = ".")]
    pub out: PathBuf,
    /// Also write two-column `.dat` variants for gnuplot.
    #[arg(long)]
    pub gnuplot: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a packet; emit coefficients, autocorrelation, peaks, time scales, density.
    Run(Common),
    /// Closed-orbit table for square, isoceles45, triangle or circle.
    Orbits {
        #[command(flatten)]
        common: Common,
        /// Overrides `[orbits] bound`.
        #[arg(long)]
        bound: Option<f64>,
    },
    /// Norm and energy of a 1D packet as it approaches and crosses a wall.
    ScanWall(Common),
    /// Expansion sums against analytic packet moments.
    Crosscheck(Common),
    /// Eigenvalues up to an energy.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Overrides `[spectrum] e_max`.
        #[arg(long)]
        e_max: Option<f64>,
    },
}

/// Files written and messages for the terminal.
#[derive(Debug, Clone, Default)]
pub struct Summary {
    pub written: Vec<PathBuf>,
    pub messages: Vec<String>,
}

fn read(path: &Path) -> Result<(String, Vec<u8>)> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Parse(format!("{} is not UTF-8", path.display())))?;
    Ok((text, bytes))
}

pub fn execute(command: &Command) -> Result<Summary> {
    let mut summary = Summary::default();
    match command {
        Command::Run(c) => {
            let (text, bytes) = read(&c.file)?;
            let s = Scenario::parse(&text)?;
            let out = commands::run(&s)?;
            let header = Header::new("run", &s.geometry.to_string(), &bytes, s.units);
            summary.written = write_tables(&c.out, &header, &out.tables, c.gnuplot)?;
            summary.messages.extend(out.warnings.into_iter().map(|w| format!("warning: {w}")));
        }
        Command::Orbits { common: c, bound } => {
            let (text, bytes) = read(&c.file)?;
            let file = ScenarioFile::parse(&text)?;
            let bound = bound
                .or(file.orbits.map(|o| o.bound))
                .ok_or_else(|| CliError::validation("orbits.bound", "missing; give [orbits] bound or --bound"))?;
            let table = commands::orbits(file.geometry, bound)?;
            let header = Header::new("orbits", &file.geometry.to_string(), &bytes, file.units()?);
            summary.written = write_tables(&c.out, &header, &[table], c.gnuplot)?;
        }
        Command::ScanWall(c) => {
            let (text, bytes) = read(&c.file)?;
            let file = ScenarioFile::parse(&text)?;
            if file.geometry != GeometryKind::Well1d {
                return Err(CliError::validation("geometry", "scan-wall needs well1d geometry"));
            }
            let Model::Well(well) = file.model()? else {
                unreachable!("well1d geometry builds a well")
            };
            let rows = commands::scan_wall_proximity(&well, &file.scan.clone().unwrap_or_default())?;
            let header = Header::new("scan-wall", "well1d", &bytes, well.units);
            summary.written = write_tables(&c.out, &header, &commands::scan_tables(&well, &rows), c.gnuplot)?;
        }
        Command::Crosscheck(c) => {
            let (text, bytes) = read(&c.file)?;
            let s = Scenario::parse(&text)?;
            let (checks, warnings) = commands::crosscheck(&s)?;
            for ch in &checks {
                summary.messages.push(format!(
                    "{} {}: expected {}, computed {}, deviation {:.3e} (tolerance {:.1e})",
                    if ch.passed() { "pass" } else { "FAIL" },
                    ch.name,
                    ch.expected,
                    ch.computed,
                    ch.deviation,
                    ch.tolerance
                ));
            }
            let table = commands::crosscheck_table(&checks, &warnings);
            let header = Header::new("crosscheck", &s.geometry.to_string(), &bytes, s.units);
            summary.written = write_tables(&c.out, &header, &[table], c.gnuplot)?;
        }
        Command::Spectrum { common: c, e_max } => {
            let (text, bytes) = read(&c.file)?;
            let mut file = ScenarioFile::parse(&text)?;
            if let Some(e) = e_max {
                file.spectrum = Some(scenario::SpectrumSpec { e_max: *e });
            }
            let table = commands::spectrum(&file)?;
            let header = Header::new("spectrum", &file.geometry.to_string(), &bytes, file.units()?);
            summary.written = write_tables(&c.out, &header, &[table], c.gnuplot)?;
        }
    }
    Ok(summary)
}
