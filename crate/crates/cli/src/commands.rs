//! The five subcommands, each producing tables.

use qbilliard::circular::{closed_orbits, lz_moments};
use qbilliard::polygonal::{
    isosceles_closed_orbits, square_closed_orbits, triangle_closed_orbits, ClosedOrbit, Launch,
};
use qbilliard::wavepacket::angular_momentum_moments;
use qbilliard::well1d::Well1D;
use qbilliard::{
    autocorrelation, detect_peaks, evolve_density_on, Expansion, GaussianPacket1D, PhysicalUnits,
    StateLabel,
};

use crate::error::{CliError, Result};
use crate::model::Model;
use crate::output::{num, Dim, Plot, Table};
use crate::scenario::{GeometryKind, OutputKind, Packet, ScanSpec, Scenario, ScenarioFile, TimeUnit};

fn label_columns(model: &Model) -> &'static [(&'static str, Dim)] {
    match model {
        Model::Well(_) => &[("n", Dim::Label)],
        Model::Rect(_) => &[("nx", Dim::Label), ("ny", Dim::Label)],
        Model::Isosceles(_) => &[("n", Dim::Label), ("m", Dim::Label)],
        Model::Triangle(_) => &[("m", Dim::Label), ("n", Dim::Label), ("parity", Dim::Label)],
        Model::HalfTriangle(_) => &[("m", Dim::Label), ("n", Dim::Label)],
        Model::Circle(_) | Model::HalfCircle(_) => &[("m", Dim::Label), ("n_r", Dim::Label)],
    }
}

fn label_cells(label: &StateLabel) -> Vec<String> {
    let mut v: Vec<String> = label.quantum_numbers().iter().map(|n| n.to_string()).collect();
    if let StateLabel::Triangle { parity, .. } = label {
        v.push(parity.to_string());
    }
    v
}

fn axis_names(model: &Model) -> &'static [&'static str] {
    match model {
        Model::Well(_) => &["n"],
        Model::Rect(_) => &["nx", "ny"],
        Model::Isosceles(_) => &["n", "m"],
        Model::Triangle(_) | Model::HalfTriangle(_) => &["m", "n"],
        Model::Circle(_) | Model::HalfCircle(_) => &["n_r", "m"],
    }
}

/// Tables from `run`, plus any non-fatal warnings raised on the way.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub tables: Vec<Table>,
    pub warnings: Vec<String>,
}

pub fn coefficient_table(model: &Model, exp: &Expansion) -> Table {
    let mut cols: Vec<(&str, Dim)> = label_columns(model).to_vec();
    let n = cols.len();
    cols.extend([("energy", Dim::Energy), ("re", Dim::Pure), ("im", Dim::Pure), ("prob", Dim::Pure)]);
    let mut t = Table::new("coefficients", &cols).with_plot(n, n + 3);
    for term in exp.terms() {
        let mut row = label_cells(&term.line.label);
        row.extend([
            num(term.line.energy),
            num(term.coeff.re),
            num(term.coeff.im),
            num(term.coeff.norm_sqr()),
        ]);
        t.push(row);
    }
    t.notes.push(format!("captured probability {}", num(exp.captured_probability())));
    t
}

fn timescale_table(s: &Scenario, exp: &Expansion) -> Table {
    let tau = s.model.tau(s.packet.momentum());
    let mut t = Table::new(
        "timescales",
        &[("quantity", Dim::Label), ("value", Dim::Time), ("value_over_tau", Dim::Pure)],
    )
    .with_plot(1, 2);
    let mut row = |name: String, v: f64| {
        let over = if tau.is_finite() { num(v / tau) } else { "nan".into() };
        t.push(vec![name, num(v), over]);
    };
    row("tau".into(), tau);
    if let Some(tr) = s.model.exact_revival() {
        row("t_rev_exact".into(), tr);
    }
    let mut note = None;
    if let Some((label, ts)) = s.model.time_scales(exp, &s.packet) {
        let names = axis_names(&s.model);
        for (i, name) in names.iter().enumerate() {
            row(format!("t_classical_{name}"), ts.classical(i));
        }
        for (i, a) in names.iter().enumerate() {
            for (j, b) in names.iter().enumerate().take(i + 1) {
                if i == j {
                    row(format!("t_revival_{a}"), ts.revival(i));
                } else {
                    row(format!("t_revival_{b}_{a}"), ts.cross_revival(i, j));
                }
            }
        }
        for (i, name) in names.iter().enumerate() {
            row(format!("t_super_{name}"), ts.superrevival(i));
        }
        if let Some(t0) = ts.t_spread {
            row("t_spread".into(), t0);
        }
        note = Some(format!("differences taken about the dominant state {label}"));
    }
    t.notes.extend(note);
    t
}

fn unit_column(unit: TimeUnit) -> String {
    match unit {
        TimeUnit::Abs => "t_abs".into(),
        u => format!("t_over_{u}"),
    }
}

fn density_table(s: &Scenario, exp: &Expansion, scale: f64, unit: TimeUnit) -> Result<Table> {
    let spec = s.density.as_ref().expect("validated");
    let [(x0, x1), (y0, y1)] = s.model.bounds();
    let k = spec.points;
    let axis = |lo: f64, hi: f64| -> Vec<f64> {
        (0..k).map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64).collect()
    };
    let tcol = unit_column(unit);
    let (points, mut table) = if s.geometry.dims() == 1 {
        let pts: Vec<Vec<f64>> = axis(x0, x1).into_iter().map(|x| vec![x]).collect();
        let mut t = Table::new(
            "density",
            &[(&tcol, Dim::Pure), ("x", Dim::Length), ("density", Dim::Pure)],
        );
        t.plot = Some(Plot {
            x: 1,
            y: 2,
            block_by: Some(0),
        });
        (pts, t)
    } else {
        let xs = axis(x0, x1);
        let pts: Vec<Vec<f64>> = axis(y0, y1)
            .into_iter()
            .flat_map(|y| xs.iter().map(move |&x| vec![x, y]))
            .collect();
        let t = Table::new(
            "density",
            &[(&tcol, Dim::Pure), ("x", Dim::Length), ("y", Dim::Length), ("density", Dim::Pure)],
        );
        (pts, t)
    };
    table
        .notes
        .push(format!("density in 1/length^{}, zero outside the billiard", s.geometry.dims()));
    for &tu in &spec.times {
        let values = evolve_density_on(exp, s.model.basis(), &points, tu * scale)?;
        for (p, v) in points.iter().zip(values) {
            let mut row = vec![num(tu)];
            row.extend(p.iter().map(|&c| num(c)));
            row.push(num(v));
            table.push(row);
        }
    }
    Ok(table)
}

/// Expand the packet and emit the requested tables.
pub fn run(s: &Scenario) -> Result<RunOutput> {
    let exp = s.model.expand(&s.packet, &s.window)?;
    let warnings: Vec<String> = exp.warnings().to_vec();
    let timing = s.times()?;
    let series = match &timing {
        Some((times, _)) => Some(autocorrelation(&exp, times)?),
        None => None,
    };
    let mut tables = Vec::new();
    for out in &s.outputs {
        match out {
            OutputKind::Coefficients => tables.push(coefficient_table(&s.model, &exp)),
            OutputKind::Timescales => tables.push(timescale_table(s, &exp)),
            OutputKind::Autocorrelation | OutputKind::Peaks => {
                let (_, scale) = timing.as_ref().expect("validated");
                let series = series.as_ref().expect("validated");
                let tcol = unit_column(s.time.expect("validated").unit);
                if *out == OutputKind::Autocorrelation {
                    let mut t = Table::new(
                        "autocorrelation",
                        &[
                            ("t", Dim::Time),
                            (&tcol, Dim::Pure),
                            ("re", Dim::Pure),
                            ("im", Dim::Pure),
                            ("abs2", Dim::Pure),
                        ],
                    )
                    .with_plot(1, 4);
                    for ((t_abs, v), m) in series.times.iter().zip(&series.values).zip(&series.magnitudes_sq) {
                        t.push(vec![num(*t_abs), num(t_abs / scale), num(v.re), num(v.im), num(*m)]);
                    }
                    tables.push(t);
                } else {
                    let mut t = Table::new(
                        "peaks",
                        &[("t", Dim::Time), (&tcol, Dim::Pure), ("abs2", Dim::Pure)],
                    )
                    .with_plot(1, 2);
                    for p in detect_peaks(series, s.peak_threshold) {
                        t.push(vec![num(p.time), num(p.time / scale), num(p.magnitude)]);
                    }
                    t.notes.push(format!("threshold {}", num(s.peak_threshold)));
                    tables.push(t);
                }
            }
            OutputKind::Density => {
                let unit = s.time.map(|g| g.unit).unwrap_or_default();
                let scale = s.time_unit_length(unit)?;
                tables.push(density_table(s, &exp, scale, unit)?);
            }
        }
    }
    for t in &mut tables {
        t.notes.extend(warnings.iter().map(|w| format!("warning: {w}")));
    }
    Ok(RunOutput { tables, warnings })
}

fn orbit_recurrences(o: &ClosedOrbit) -> String {
    o.recurrences.iter().map(|t| format!("{t:.2}")).collect::<Vec<_>>().join(" ")
}

/// Closed-orbit table for a geometry, values rounded to two decimals.
///
/// Square and 45-45-90: `bound` limits `T/τ`, sorted by angle.
/// Triangle: `bound` limits `L/a`, sorted by angle from the bisector.
/// Circle: `bound` limits `L/R` strictly, sorted by `q` then `p`.
pub fn orbits(kind: GeometryKind, bound: f64) -> Result<Table> {
    if !(bound > 0.0 && bound.is_finite()) {
        return Err(CliError::validation("orbits.bound", format!("must be positive, got {bound}")));
    }
    let by_angle = |mut v: Vec<ClosedOrbit>| {
        v.sort_by(|a, b| {
            let (x, y) = (a.angle_degrees().unwrap_or(0.0), b.angle_degrees().unwrap_or(0.0));
            x.total_cmp(&y).then(a.length.total_cmp(&b.length))
        });
        v
    };
    let polygon = |v: Vec<ClosedOrbit>| {
        let mut t = Table::new(
            "orbits",
            &[
                ("p", Dim::Label),
                ("q", Dim::Label),
                ("length_over_a", Dim::Pure),
                ("period_over_tau", Dim::Pure),
                ("theta_deg", Dim::Pure),
                ("recurrences_over_tau", Dim::Pure),
            ],
        )
        .with_plot(4, 3);
        for o in by_angle(v) {
            t.push(vec![
                o.p.to_string(),
                o.q.to_string(),
                format!("{:.2}", o.length),
                format!("{:.2}", o.period_over_tau),
                format!("{:.2}", o.angle_degrees().unwrap_or(f64::NAN)),
                orbit_recurrences(&o),
            ]);
        }
        t
    };
    Ok(match kind {
        GeometryKind::Square => polygon(square_closed_orbits(bound)),
        GeometryKind::Isoceles45 => polygon(isosceles_closed_orbits(bound)),
        GeometryKind::Triangle => polygon(triangle_closed_orbits(bound)),
        GeometryKind::Circle => {
            let mut v = closed_orbits(bound);
            // whispering-gallery rows (p = 0) close each q group
            v.sort_by_key(|o| (o.q, o.p == 0, o.p));
            let mut t = Table::new(
                "orbits",
                &[
                    ("p", Dim::Label),
                    ("q", Dim::Label),
                    ("length_over_r", Dim::Pure),
                    ("rmin_over_r", Dim::Pure),
                    ("recurrences_over_tau", Dim::Pure),
                ],
            )
            .with_plot(3, 2);
            for o in v {
                let Launch::ClosestApproach(rmin) = o.launch else {
                    unreachable!("circular orbits are launched by closest approach")
                };
                t.push(vec![
                    if o.p == 0 { "inf".into() } else { o.p.to_string() },
                    o.q.to_string(),
                    format!("{:.2}", o.length),
                    format!("{rmin:.2}"),
                    orbit_recurrences(&o),
                ]);
            }
            t.notes.push("tau = R/v0; p = inf is the whispering-gallery limit".into());
            t
        }
        other => {
            return Err(CliError::validation(
                "geometry",
                format!("no closed-orbit table for {other} geometry"),
            ))
        }
    })
}

/// One point of the wall-proximity scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub x0: f64,
    pub dx0: f64,
    pub norm: f64,
    pub energy: f64,
}

/// `Σ|a_n|²` and `Σ|a_n|²E_n` over the first `states` levels, by
/// quadrature, as the packet center `x0` moves toward and past the wall.
pub fn scan_wall_proximity(well: &Well1D, spec: &ScanSpec) -> Result<Vec<ScanRow>> {
    let a = well.width;
    let lo = well.offset;
    if spec.x0_min < lo || spec.x0_max > lo + 1.5 * a || spec.x0_min > spec.x0_max {
        return Err(CliError::validation(
            "scan",
            format!(
                "x0 grid [{}, {}] must be increasing within [{lo}, {}]",
                spec.x0_min,
                spec.x0_max,
                lo + 1.5 * a
            ),
        ));
    }
    if spec.steps < 1 || (spec.steps == 1 && spec.x0_min != spec.x0_max) {
        return Err(CliError::validation("scan.steps", "need at least 2 steps for a range"));
    }
    if spec.widths.is_empty() || spec.widths.iter().any(|w| !(*w > 0.0 && w.is_finite())) {
        return Err(CliError::validation("scan.widths", "need positive widths"));
    }
    if spec.states == 0 {
        return Err(CliError::validation("scan.states", "need at least one state"));
    }
    let mut rows = Vec::new();
    for &dx0 in &spec.widths {
        for i in 0..spec.steps {
            let x0 = if spec.steps == 1 {
                spec.x0_min
            } else {
                spec.x0_min + (spec.x0_max - spec.x0_min) * i as f64 / (spec.steps - 1) as f64
            };
            let packet = GaussianPacket1D::with_spread(x0, spec.p0, dx0)?;
            let exp = well.coefficients_exact(&packet, spec.states)?;
            rows.push(ScanRow {
                x0,
                dx0,
                norm: exp.captured_probability(),
                energy: exp.mean_energy(),
            });
        }
    }
    Ok(rows)
}

pub fn scan_table(well: &Well1D, rows: &[ScanRow]) -> Table {
    let mut t = Table::new(
        "scan_wall",
        &[
            ("x0_over_a", Dim::Pure),
            ("dx0", Dim::Length),
            ("norm", Dim::Pure),
            ("energy", Dim::Energy),
        ],
    );
    t.plot = Some(Plot {
        x: 0,
        y: 2,
        block_by: Some(1),
    });
    for r in rows {
        t.push(vec![
            num((r.x0 - well.offset) / well.width),
            num(r.dx0),
            num(r.norm),
            num(r.energy),
        ]);
    }
    t.notes.push("energy is sum |a_n|^2 E_n, not divided by the norm".into());
    t
}

/// The scan plus its energy column as a second plottable table.
pub fn scan_tables(well: &Well1D, rows: &[ScanRow]) -> Vec<Table> {
    let norm = scan_table(well, rows);
    let mut energy = norm.clone();
    energy.name = "scan_wall_energy".into();
    energy.plot = Some(Plot {
        x: 0,
        y: 3,
        block_by: Some(1),
    });
    vec![norm, energy]
}

/// Outcome of one closure check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub expected: f64,
    pub computed: f64,
    pub deviation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }
}

/// Expansion sums against analytic packet moments.
pub fn crosscheck(s: &Scenario) -> Result<(Vec<Check>, Vec<String>)> {
    let exp = match (&s.model, &s.packet) {
        // quadrature sees the walls, so a straddling packet shows its deficit
        (Model::Well(w), Packet::OneD(p)) if s.window.method.is_none() => {
            let d = w.n_window(p).range();
            let range = s.window.n_min.unwrap_or(*d.start())..=s.window.n_max.unwrap_or(*d.end());
            w.coefficients_exact_in(p, range)?
        }
        _ => s.model.expand(&s.packet, &s.window)?,
    };
    let tol = s.crosscheck;
    let units: PhysicalUnits = s.units;
    let norm = exp.captured_probability();
    let mut checks = vec![Check {
        name: "norm",
        expected: 1.0,
        computed: norm,
        deviation: (1.0 - norm).abs(),
        tolerance: tol.norm_tol,
    }];
    let e_expect = s.packet.mean_energy(&units);
    let e = if norm > 0.0 { exp.mean_energy() / norm } else { f64::NAN };
    checks.push(Check {
        name: "energy",
        expected: e_expect,
        computed: e,
        deviation: ((e - e_expect) / e_expect).abs(),
        tolerance: tol.energy_tol,
    });
    if let (Model::Circle(_), Packet::TwoD(p)) = (&s.model, &s.packet) {
        let l = angular_momentum_moments(p, &units);
        let (lz, _) = lz_moments(&exp);
        let lz = if norm > 0.0 { lz / norm } else { f64::NAN };
        checks.push(Check {
            name: "lz",
            expected: l.mean,
            computed: lz,
            deviation: (lz - l.mean).abs() / l.mean.abs().max(units.hbar),
            tolerance: tol.lz_tol,
        });
    }
    let deviation_nan = checks.iter_mut().filter(|c| c.deviation.is_nan());
    for c in deviation_nan {
        c.deviation = f64::INFINITY;
    }
    Ok((checks, exp.warnings().to_vec()))
}

pub fn crosscheck_table(checks: &[Check], warnings: &[String]) -> Table {
    let mut t = Table::new(
        "crosscheck",
        &[
            ("check", Dim::Label),
            ("expected", Dim::Pure),
            ("computed", Dim::Pure),
            ("deviation", Dim::Pure),
            ("tolerance", Dim::Pure),
            ("status", Dim::Label),
        ],
    );
    for c in checks {
        t.push(vec![
            c.name.into(),
            num(c.expected),
            num(c.computed),
            num(c.deviation),
            num(c.tolerance),
            if c.passed() { "pass" } else { "fail" }.into(),
        ]);
    }
    t.notes.push("norm deviation is absolute; energy and lz deviations are relative".into());
    t.notes.push("energy rows in energy units, lz rows in units of angular momentum".into());
    t.notes.extend(warnings.iter().map(|w| format!("warning: {w}")));
    t
}

pub fn spectrum(file: &ScenarioFile) -> Result<Table> {
    let model = file.model()?;
    let spec = file
        .spectrum
        .ok_or_else(|| CliError::validation("spectrum", "missing [spectrum] table"))?;
    let lines = model.spectrum(spec.e_max)?;
    let mut cols: Vec<(&str, Dim)> = vec![("level", Dim::Label)];
    cols.extend_from_slice(label_columns(&model));
    let n = cols.len();
    cols.push(("energy", Dim::Energy));
    let mut t = Table::new("spectrum", &cols).with_plot(0, n);
    for (i, l) in lines.iter().enumerate() {
        let mut row = vec![(i + 1).to_string()];
        row.extend(label_cells(&l.label));
        row.push(num(l.energy));
        t.push(row);
    }
    Ok(t)
}
