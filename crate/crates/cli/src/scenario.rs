//! Scenario files: TOML with a `geometry` key and optional tables.
//!
//! ```toml
//! geometry = "square"
//!
//! [units]
//! hbar = 1.0
//! mu = 0.5
//! size = 1.0
//!
//! [packet]
//! x0 = 0.5
//! y0 = 0.5
//! p0 = 1256.637
//! theta_deg = 26.57
//! dx0 = 0.05
//!
//! [time]
//! end = 3.0
//! samples = 6001
//! unit = "tau"
//!
//! [output]
//! requested = ["coefficients", "autocorrelation", "peaks", "timescales"]
//! ```

use std::fmt;

use serde::Deserialize;

use crate::error::{CliError, Result};
use crate::model::Model;
use qbilliard::wavepacket::DEFAULT_PEAK_THRESHOLD;
use qbilliard::{GaussianPacket1D, GaussianPacket2D, PhysicalUnits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryKind {
    Well1d,
    Rect,
    Square,
    Isoceles45,
    Triangle,
    Tri306090,
    Circle,
    Halfcircle,
}

impl GeometryKind {
    pub fn dims(self) -> usize {
        if self == GeometryKind::Well1d {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for GeometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeometryKind::Well1d => "well1d",
            GeometryKind::Rect => "rect",
            GeometryKind::Square => "square",
            GeometryKind::Isoceles45 => "isoceles45",
            GeometryKind::Triangle => "triangle",
            GeometryKind::Tri306090 => "tri306090",
            GeometryKind::Circle => "circle",
            GeometryKind::Halfcircle => "halfcircle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitsSpec {
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "half")]
    pub mu: f64,
    #[serde(default = "one")]
    pub size: f64,
}

fn one() -> f64 {
    1.0
}

fn half() -> f64 {
    0.5
}

impl Default for UnitsSpec {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            mu: 0.5,
            size: 1.0,
        }
    }
}

/// Extra geometry parameters; `size` in `[units]` covers the rest.
#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeSpec {
    /// well1d: left wall position.
    pub offset: Option<f64>,
    /// rect: side lengths (default `size`).
    pub lx: Option<f64>,
    pub ly: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketSpec {
    pub x0: f64,
    pub y0: Option<f64>,
    pub p0: Option<f64>,
    pub theta_deg: Option<f64>,
    pub p0x: Option<f64>,
    pub p0y: Option<f64>,
    pub dx0: Option<f64>,
    pub b: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WellMethod {
    ClosedForm,
    Quadrature,
}

/// Optional truncation overrides; unset bounds keep the default window.
#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub method: Option<WellMethod>,
    pub n_min: Option<u32>,
    pub n_max: Option<u32>,
    pub nx_min: Option<u32>,
    pub nx_max: Option<u32>,
    pub ny_min: Option<u32>,
    pub ny_max: Option<u32>,
    pub e_max: Option<f64>,
    pub m_min: Option<i32>,
    pub m_max: Option<i32>,
    pub z_min: Option<f64>,
    pub z_max: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeUnit {
    #[default]
    Abs,
    Tau,
    TRev,
}

impl fmt::Display for TimeUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TimeUnit::Abs => "abs",
            TimeUnit::Tau => "tau",
            TimeUnit::TRev => "t_rev",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSpec {
    #[serde(default)]
    pub start: f64,
    pub end: f64,
    pub samples: usize,
    #[serde(default)]
    pub unit: TimeUnit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Coefficients,
    Autocorrelation,
    Peaks,
    Timescales,
    Density,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub requested: Option<Vec<OutputKind>>,
    pub peak_threshold: Option<f64>,
}

/// Density snapshots at `times` (in the `[time]` unit) on a
/// `points`-per-axis grid over the bounding box.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensitySpec {
    pub times: Vec<f64>,
    #[serde(default = "default_points")]
    pub points: usize,
}

fn default_points() -> usize {
    101
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitSpec {
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    #[serde(default)]
    pub x0_min: f64,
    #[serde(default = "scan_max")]
    pub x0_max: f64,
    #[serde(default = "scan_steps")]
    pub steps: usize,
    #[serde(default = "scan_widths")]
    pub widths: Vec<f64>,
    #[serde(default)]
    pub p0: f64,
    #[serde(default = "scan_states")]
    pub states: u32,
}

fn scan_max() -> f64 {
    1.5
}

fn scan_steps() -> usize {
    151
}

fn scan_widths() -> Vec<f64> {
    vec![0.05, 0.1]
}

fn scan_states() -> u32 {
    40
}

impl Default for ScanSpec {
    fn default() -> Self {
        Self {
            x0_min: 0.0,
            x0_max: scan_max(),
            steps: scan_steps(),
            widths: scan_widths(),
            p0: 0.0,
            states: scan_states(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumSpec {
    pub e_max: f64,
}

/// Relative tolerances of the closure checks.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrosscheckSpec {
    #[serde(default = "norm_tol")]
    pub norm_tol: f64,
    #[serde(default = "moment_tol")]
    pub energy_tol: f64,
    #[serde(default = "moment_tol")]
    pub lz_tol: f64,
}

fn norm_tol() -> f64 {
    1e-3
}

fn moment_tol() -> f64 {
    1e-2
}

impl Default for CrosscheckSpec {
    fn default() -> Self {
        Self {
            norm_tol: norm_tol(),
            energy_tol: moment_tol(),
            lz_tol: moment_tol(),
        }
    }
}

/// The file as written, before cross-field validation.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub geometry: GeometryKind,
    #[serde(default)]
    pub units: UnitsSpec,
    #[serde(default)]
    pub shape: ShapeSpec,
    pub packet: Option<PacketSpec>,
    #[serde(default)]
    pub window: WindowSpec,
    pub time: Option<TimeSpec>,
    #[serde(default)]
    pub output: OutputSpec,
    pub density: Option<DensitySpec>,
    pub orbits: Option<OrbitSpec>,
    pub scan: Option<ScanSpec>,
    pub spectrum: Option<SpectrumSpec>,
    #[serde(default)]
    pub crosscheck: CrosscheckSpec,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn units(&self) -> Result<PhysicalUnits> {
        let u = self.units;
        PhysicalUnits::new(u.hbar, u.mu, u.size).map_err(|e| CliError::validation("units", e.to_string()))
    }

    pub fn model(&self) -> Result<Model> {
        Model::build(self.geometry, self.units()?, &self.shape)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Packet {
    OneD(GaussianPacket1D),
    TwoD(GaussianPacket2D),
}

impl Packet {
    pub fn momentum(&self) -> f64 {
        match self {
            Packet::OneD(p) => p.p0.abs(),
            Packet::TwoD(p) => p.momentum(),
        }
    }

    pub fn width(&self) -> f64 {
        match self {
            Packet::OneD(p) => p.b,
            Packet::TwoD(p) => p.b,
        }
    }

    pub fn mean_energy(&self, units: &PhysicalUnits) -> f64 {
        match self {
            Packet::OneD(p) => qbilliard::wavepacket::packet_moments_1d(p, units).energy,
            Packet::TwoD(p) => p.mean_energy(units),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub start: f64,
    pub end: f64,
    pub samples: usize,
    pub unit: TimeUnit,
}

/// A validated scenario, ready for `run` or `crosscheck`.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub geometry: GeometryKind,
    pub units: PhysicalUnits,
    pub model: Model,
    pub packet: Packet,
    pub window: WindowSpec,
    pub time: Option<TimeGrid>,
    pub outputs: Vec<OutputKind>,
    pub peak_threshold: f64,
    pub density: Option<DensitySpec>,
    pub crosscheck: CrosscheckSpec,
}

fn finite(field: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::validation(field, format!("must be finite, got {v}")))
    }
}

fn forbid<T>(field: &str, v: Option<T>, why: &str) -> Result<()> {
    match v {
        Some(_) => Err(CliError::validation(field, why.to_string())),
        None => Ok(()),
    }
}

fn packet(kind: GeometryKind, spec: &PacketSpec) -> Result<Packet> {
    let b = match (spec.dx0, spec.b) {
        (Some(dx0), None) => {
            if !(dx0 > 0.0 && dx0.is_finite()) {
                return Err(CliError::validation("packet.dx0", format!("must be positive, got {dx0}")));
            }
            dx0 * 2f64.sqrt()
        }
        (None, Some(b)) => {
            if !(b > 0.0 && b.is_finite()) {
                return Err(CliError::validation("packet.b", format!("must be positive, got {b}")));
            }
            b
        }
        _ => return Err(CliError::validation("packet", "give exactly one of dx0 or b")),
    };
    let x0 = finite("packet.x0", spec.x0)?;
    if kind.dims() == 1 {
        let why = "a well1d packet is one-dimensional";
        forbid("packet.y0", spec.y0, why)?;
        forbid("packet.theta_deg", spec.theta_deg, why)?;
        forbid("packet.p0y", spec.p0y, why)?;
        if spec.p0.is_some() && spec.p0x.is_some() {
            return Err(CliError::validation("packet", "give p0 or p0x, not both"));
        }
        let p0 = finite("packet.p0", spec.p0.or(spec.p0x).unwrap_or(0.0))?;
        return Ok(Packet::OneD(GaussianPacket1D::new(x0, p0, b)?));
    }
    let y0 = spec
        .y0
        .ok_or_else(|| CliError::validation("packet.y0", format!("required for {kind} geometry")))?;
    let y0 = finite("packet.y0", y0)?;
    let (p0x, p0y) = match (spec.p0, spec.p0x, spec.p0y) {
        (Some(p0), None, None) => {
            let theta = finite("packet.theta_deg", spec.theta_deg.unwrap_or(0.0))?.to_radians();
            let p0 = finite("packet.p0", p0)?;
            (p0 * theta.cos(), p0 * theta.sin())
        }
        (None, px, py) => {
            forbid("packet.theta_deg", spec.theta_deg, "theta_deg goes with p0, not p0x/p0y")?;
            (
                finite("packet.p0x", px.unwrap_or(0.0))?,
                finite("packet.p0y", py.unwrap_or(0.0))?,
            )
        }
        _ => return Err(CliError::validation("packet", "give p0 (with theta_deg) or p0x/p0y, not both")),
    };
    Ok(Packet::TwoD(GaussianPacket2D::new(x0, y0, p0x, p0y, b)?))
}

fn check_window(kind: GeometryKind, w: &WindowSpec) -> Result<()> {
    use GeometryKind as G;
    let allowed: &[&str] = match kind {
        G::Well1d => &["method", "n_min", "n_max"],
        G::Rect | G::Square => &["nx_min", "nx_max", "ny_min", "ny_max"],
        G::Isoceles45 => &["n_min", "n_max"],
        G::Triangle | G::Tri306090 => &["e_max"],
        G::Circle | G::Halfcircle => &["m_min", "m_max", "z_min", "z_max"],
    };
    let present = [
        ("method", w.method.is_some()),
        ("n_min", w.n_min.is_some()),
        ("n_max", w.n_max.is_some()),
        ("nx_min", w.nx_min.is_some()),
        ("nx_max", w.nx_max.is_some()),
        ("ny_min", w.ny_min.is_some()),
        ("ny_max", w.ny_max.is_some()),
        ("e_max", w.e_max.is_some()),
        ("m_min", w.m_min.is_some()),
        ("m_max", w.m_max.is_some()),
        ("z_min", w.z_min.is_some()),
        ("z_max", w.z_max.is_some()),
    ];
    for (name, set) in present {
        if set && !allowed.contains(&name) {
            return Err(CliError::validation(
                format!("window.{name}"),
                format!("not a window parameter of {kind} geometry"),
            ));
        }
    }
    let pairs = [
        ("n", w.n_min.map(f64::from), w.n_max.map(f64::from)),
        ("nx", w.nx_min.map(f64::from), w.nx_max.map(f64::from)),
        ("ny", w.ny_min.map(f64::from), w.ny_max.map(f64::from)),
        ("m", w.m_min.map(f64::from), w.m_max.map(f64::from)),
        ("z", w.z_min, w.z_max),
    ];
    for (name, lo, hi) in pairs {
        if let (Some(lo), Some(hi)) = (lo, hi) {
            if lo > hi {
                return Err(CliError::validation(
                    format!("window.{name}_min"),
                    format!("{lo} exceeds {name}_max = {hi}"),
                ));
            }
        }
    }
    for (name, v) in [("n_min", w.n_min), ("nx_min", w.nx_min), ("ny_min", w.ny_min)] {
        if v == Some(0) {
            return Err(CliError::validation(format!("window.{name}"), "levels start at 1"));
        }
    }
    if kind == G::Halfcircle && w.m_min.is_some_and(|m| m < 1) {
        return Err(CliError::validation("window.m_min", "half-disk states need m >= 1"));
    }
    if let Some(e) = w.e_max {
        if !(e > 0.0 && e.is_finite()) {
            return Err(CliError::validation("window.e_max", format!("must be positive, got {e}")));
        }
    }
    Ok(())
}

fn time_grid(t: &TimeSpec) -> Result<TimeGrid> {
    finite("time.start", t.start)?;
    finite("time.end", t.end)?;
    if t.samples < 2 {
        return Err(CliError::validation("time.samples", "need at least 2 samples"));
    }
    if !(t.end > t.start) {
        return Err(CliError::validation(
            "time.end",
            format!("must exceed time.start = {}", t.start),
        ));
    }
    Ok(TimeGrid {
        start: t.start,
        end: t.end,
        samples: t.samples,
        unit: t.unit,
    })
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_file(&ScenarioFile::parse(text)?)
    }

    pub fn from_file(file: &ScenarioFile) -> Result<Self> {
        let kind = file.geometry;
        let units = file.units()?;
        let model = file.model()?;
        let spec = file
            .packet
            .as_ref()
            .ok_or_else(|| CliError::validation("packet", "missing [packet] table"))?;
        let packet = packet(kind, spec)?;
        check_window(kind, &file.window)?;
        let time = file.time.as_ref().map(time_grid).transpose()?;

        let outputs = match &file.output.requested {
            Some(list) if list.is_empty() => {
                return Err(CliError::validation("output.requested", "no outputs requested"));
            }
            Some(list) => {
                let mut v = list.clone();
                v.sort();
                v.dedup();
                v
            }
            None => {
                let mut v = vec![OutputKind::Coefficients, OutputKind::Timescales];
                if time.is_some() {
                    v.extend([OutputKind::Autocorrelation, OutputKind::Peaks]);
                }
                if file.density.is_some() {
                    v.push(OutputKind::Density);
                }
                v.sort();
                v
            }
        };
        for o in &outputs {
            match o {
                OutputKind::Autocorrelation | OutputKind::Peaks if time.is_none() => {
                    return Err(CliError::validation("time", "autocorrelation and peaks need a [time] table"));
                }
                OutputKind::Density if file.density.is_none() => {
                    return Err(CliError::validation("density", "density output needs a [density] table"));
                }
                _ => {}
            }
        }
        if let Some(d) = &file.density {
            if d.times.is_empty() {
                return Err(CliError::validation("density.times", "empty"));
            }
            if d.points < 2 {
                return Err(CliError::validation("density.points", "need at least 2 points per axis"));
            }
            for t in &d.times {
                finite("density.times", *t)?;
            }
        }
        let peak_threshold = file.output.peak_threshold.unwrap_or(DEFAULT_PEAK_THRESHOLD);
        if !(0.0..=1.0).contains(&peak_threshold) {
            return Err(CliError::validation(
                "output.peak_threshold",
                format!("must lie in [0, 1], got {peak_threshold}"),
            ));
        }
        let c = file.crosscheck;
        for (name, v) in [
            ("crosscheck.norm_tol", c.norm_tol),
            ("crosscheck.energy_tol", c.energy_tol),
            ("crosscheck.lz_tol", c.lz_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::validation(name, format!("must be positive, got {v}")));
            }
        }

        Ok(Self {
            geometry: kind,
            units,
            model,
            packet,
            window: file.window,
            time,
            outputs,
            peak_threshold,
            density: file.density.clone(),
            crosscheck: c,
        })
    }

    /// Length of one time unit of the `[time]` table.
    pub fn time_unit_length(&self, unit: TimeUnit) -> Result<f64> {
        match unit {
            TimeUnit::Abs => Ok(1.0),
            TimeUnit::Tau => {
                let tau = self.model.tau(self.packet.momentum());
                if tau.is_finite() {
                    Ok(tau)
                } else {
                    Err(CliError::validation("time.unit", "tau is undefined for a packet at rest"))
                }
            }
            TimeUnit::TRev => self.model.exact_revival().ok_or_else(|| {
                CliError::validation(
                    "time.unit",
                    format!("{} geometry has no exact revival time", self.geometry),
                )
            }),
        }
    }

    /// Absolute sample times and the unit they are reported in.
    pub fn times(&self) -> Result<Option<(Vec<f64>, f64)>> {
        let Some(grid) = self.time else {
            return Ok(None);
        };
        let scale = self.time_unit_length(grid.unit)?;
        let times = qbilliard::wavepacket::uniform_times(grid.start * scale, grid.end * scale, grid.samples);
        Ok(Some((times, scale)))
    }
}
