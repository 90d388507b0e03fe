//! One billiard per geometry kind behind a common front.

use qbilliard::circular::{CircBilliard, CircWindow, HalfCircleBilliard};
use qbilliard::polygonal::{
    AxisWindows, HalfTriangleBilliard, IsoscelesBilliard, RectBilliard, RevivalStatus,
    TriangleBilliard,
};
use qbilliard::special::MAX_ORDER;
use qbilliard::well1d::Well1D;
use qbilliard::{time_scales, Basis, Expansion, PhysicalUnits, SpectralLine, StateLabel, TimeScales};

use crate::error::{CliError, Result};
use crate::scenario::{GeometryKind, Packet, ShapeSpec, WellMethod, WindowSpec};

/// Spectra longer than this are refused.
const MAX_SPECTRUM: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Well(Well1D),
    Rect(RectBilliard),
    Isosceles(IsoscelesBilliard),
    Triangle(TriangleBilliard),
    HalfTriangle(HalfTriangleBilliard),
    Circle(CircBilliard),
    HalfCircle(HalfCircleBilliard),
}

fn two_d(packet: &Packet) -> Result<&qbilliard::GaussianPacket2D> {
    match packet {
        Packet::TwoD(p) => Ok(p),
        Packet::OneD(_) => Err(CliError::validation("packet", "this geometry needs a 2D packet")),
    }
}

impl Model {
    pub fn build(kind: GeometryKind, units: PhysicalUnits, shape: &ShapeSpec) -> Result<Self> {
        use GeometryKind as G;
        if kind != G::Well1d && shape.offset.is_some() {
            return Err(CliError::validation("shape.offset", "only a well1d has an offset"));
        }
        if kind != G::Rect && (shape.lx.is_some() || shape.ly.is_some()) {
            return Err(CliError::validation("shape", "lx and ly belong to rect geometry"));
        }
        let shape_err = |e: qbilliard::Error| CliError::validation("shape", e.to_string());
        Ok(match kind {
            G::Well1d => Model::Well(
                Well1D::new(units.size, shape.offset.unwrap_or(0.0), units).map_err(shape_err)?,
            ),
            G::Rect => Model::Rect(
                RectBilliard::new(
                    shape.lx.unwrap_or(units.size),
                    shape.ly.unwrap_or(units.size),
                    units,
                )
                .map_err(shape_err)?,
            ),
            G::Square => Model::Rect(RectBilliard::square(units)),
            G::Isoceles45 => Model::Isosceles(IsoscelesBilliard::standard(units)),
            G::Triangle => Model::Triangle(TriangleBilliard::standard(units)),
            G::Tri306090 => Model::HalfTriangle(TriangleBilliard::standard(units).fold_306090()),
            G::Circle => Model::Circle(CircBilliard::standard(units)),
            G::Halfcircle => Model::HalfCircle(CircBilliard::standard(units).half_circle()),
        })
    }

    pub fn units(&self) -> PhysicalUnits {
        match self {
            Model::Well(w) => w.units,
            Model::Rect(r) => r.units,
            Model::Isosceles(i) => i.units(),
            Model::Triangle(t) => t.units,
            Model::HalfTriangle(h) => h.parent().units,
            Model::Circle(c) => c.units,
            Model::HalfCircle(h) => h.disk().units,
        }
    }

    pub fn basis(&self) -> &dyn Basis {
        match self {
            Model::Well(w) => w,
            Model::Rect(r) => r,
            Model::Isosceles(i) => i,
            Model::Triangle(t) => t,
            Model::HalfTriangle(h) => h,
            Model::Circle(c) => c,
            Model::HalfCircle(h) => h,
        }
    }

    pub fn is_circular(&self) -> bool {
        matches!(self, Model::Circle(_) | Model::HalfCircle(_))
    }

    /// Reference time: `2a/v` for the well and polygons, `R/v` for disks.
    pub fn tau(&self, p0: f64) -> f64 {
        match self {
            Model::Well(w) => w.round_trip_time(p0),
            Model::Rect(r) => r.tau(p0),
            Model::Isosceles(i) => i.square().tau(p0),
            Model::Triangle(t) => t.tau(p0),
            Model::HalfTriangle(h) => h.parent().tau(p0),
            Model::Circle(c) => c.tau(p0),
            Model::HalfCircle(h) => h.disk().tau(p0),
        }
    }

    /// Time at which every level phase realigns, if there is one.
    pub fn exact_revival(&self) -> Option<f64> {
        match self {
            Model::Well(w) => Some(w.revival_time()),
            Model::Rect(r) => match r.revival_status() {
                RevivalStatus::Common(t) => Some(t),
                RevivalStatus::Incommensurate => None,
            },
            Model::Isosceles(i) => Some(i.revival_time()),
            Model::Triangle(t) => Some(t.revival_time()),
            Model::HalfTriangle(h) => Some(h.revival_time()),
            Model::Circle(_) | Model::HalfCircle(_) => None,
        }
    }

    /// Energy at integer quantum numbers, continued off the physical
    /// lattice where the closed form allows it.
    fn energy_at(&self, n: &[i64]) -> f64 {
        let sq = |k: i64| (k * k) as f64;
        match self {
            Model::Well(w) => sq(n[0]) * w.ground_energy(),
            Model::Rect(r) => sq(n[0]) * r.x_well().ground_energy() + sq(n[1]) * r.y_well().ground_energy(),
            Model::Isosceles(i) => {
                let e0 = i.square().x_well().ground_energy();
                (sq(n[0]) + sq(n[1])) * e0
            }
            Model::Triangle(t) => triangle_level(t, n),
            Model::HalfTriangle(h) => triangle_level(h.parent(), n),
            Model::Circle(c) => circle_energy(c, n),
            Model::HalfCircle(h) => circle_energy(h.disk(), n),
        }
    }

    /// Quantum numbers of the time-scale axes for one state.
    fn axes(label: &StateLabel) -> Vec<i64> {
        match *label {
            // radial index first, angular second
            StateLabel::Circle { m, n_r } => vec![n_r as i64, m as i64],
            StateLabel::HalfCircle { m, n_r } => vec![n_r as i64, m as i64],
            other => other.quantum_numbers(),
        }
    }

    /// Finite-difference time scales about the most populated state.
    pub fn time_scales(&self, exp: &Expansion, packet: &Packet) -> Option<(StateLabel, TimeScales)> {
        let top = exp.by_probability().into_iter().next()?;
        let center = Self::axes(&top.line.label);
        let units = self.units();
        let ts = time_scales(|n| self.energy_at(n), &center, &units)
            .with_spread(qbilliard::spreading_time(packet.width(), &units));
        Some((top.line.label, ts))
    }

    pub fn expand(&self, packet: &Packet, w: &WindowSpec) -> Result<Expansion> {
        let exp = match self {
            Model::Well(well) => {
                let Packet::OneD(p) = packet else {
                    return Err(CliError::validation("packet", "well1d needs a 1D packet"));
                };
                let d = well.n_window(p).range();
                let range = w.n_min.unwrap_or(*d.start())..=w.n_max.unwrap_or(*d.end());
                check_range("window.n_max", &range)?;
                match w.method.unwrap_or(WellMethod::ClosedForm) {
                    WellMethod::ClosedForm => well.coefficients_closed_form_in(p, range)?,
                    WellMethod::Quadrature => well.coefficients_exact_in(p, range)?,
                }
            }
            Model::Rect(r) => {
                let p = two_d(packet)?;
                let d = r.default_window(p);
                let win = AxisWindows {
                    x: w.nx_min.unwrap_or(*d.x.start())..=w.nx_max.unwrap_or(*d.x.end()),
                    y: w.ny_min.unwrap_or(*d.y.start())..=w.ny_max.unwrap_or(*d.y.end()),
                };
                check_range("window.nx_max", &win.x)?;
                check_range("window.ny_max", &win.y)?;
                r.coefficients(p, &win)?
            }
            Model::Isosceles(i) => {
                let p = two_d(packet)?;
                let d = i.default_window(p);
                let range = w.n_min.unwrap_or(*d.start())..=w.n_max.unwrap_or(*d.end());
                check_range("window.n_max", &range)?;
                i.coefficients(p, range)?
            }
            Model::Triangle(t) => {
                let p = two_d(packet)?;
                let states = match w.e_max {
                    Some(e) => t.states_below(e),
                    None => t.default_states(p),
                };
                t.coefficients(p, &states)?
            }
            Model::HalfTriangle(h) => {
                let p = two_d(packet)?;
                let states = match w.e_max {
                    Some(e) => h
                        .parent()
                        .states_below(e)
                        .into_iter()
                        .filter(|s| s.m > 2 * s.n && s.parity == qbilliard::Parity::Minus)
                        .map(|s| (s.m, s.n))
                        .collect(),
                    None => h.default_states(p),
                };
                h.coefficients(p, &states)?
            }
            Model::Circle(c) => {
                let p = two_d(packet)?;
                c.coefficients(p, &circ_window(c.default_window(p), w))?
            }
            Model::HalfCircle(h) => {
                let p = two_d(packet)?;
                h.coefficients(p, &circ_window(h.default_window(p), w))?
            }
        };
        Ok(exp)
    }

    /// Every level with `E <= e_max`, sorted by energy then label.
    pub fn spectrum(&self, e_max: f64) -> Result<Vec<SpectralLine>> {
        if !(e_max > 0.0 && e_max.is_finite()) {
            return Err(CliError::validation("spectrum.e_max", format!("must be positive, got {e_max}")));
        }
        let too_many = || {
            CliError::validation(
                "spectrum.e_max",
                format!("more than {MAX_SPECTRUM} levels lie below {e_max}"),
            )
        };
        let mut out = Vec::new();
        match self {
            Model::Well(w) => {
                let n_max = (e_max / w.ground_energy()).sqrt().floor() as usize;
                if n_max > MAX_SPECTRUM {
                    return Err(too_many());
                }
                out.extend((1..=n_max as u32).map(|n| w.line(n)));
            }
            Model::Rect(r) => {
                let (ex, ey) = (r.x_well().ground_energy(), r.y_well().ground_energy());
                let nx_max = (e_max / ex).sqrt().floor();
                let ny_max = (e_max / ey).sqrt().floor();
                if nx_max * ny_max > 4.0 * MAX_SPECTRUM as f64 {
                    return Err(too_many());
                }
                for nx in 1..=nx_max as u32 {
                    for ny in 1..=ny_max as u32 {
                        let line = r.line(nx, ny);
                        if line.energy <= e_max {
                            out.push(line);
                        }
                    }
                }
            }
            Model::Isosceles(i) => {
                let e0 = i.square().x_well().ground_energy();
                let n_max = (e_max / e0).sqrt().floor();
                if n_max * n_max > 4.0 * MAX_SPECTRUM as f64 {
                    return Err(too_many());
                }
                for n in 2..=n_max as u32 {
                    for m in 1..n {
                        let line = i.line(n, m);
                        if line.energy <= e_max {
                            out.push(line);
                        }
                    }
                }
            }
            Model::Triangle(t) => {
                let scale = t.energy(2, 1)? / 3.0;
                if e_max / scale > 4.0 * MAX_SPECTRUM as f64 {
                    return Err(too_many());
                }
                out.extend(t.states_below(e_max).iter().map(|s| t.line(s)));
            }
            Model::HalfTriangle(h) => {
                let scale = h.parent().energy(2, 1)? / 3.0;
                if e_max / scale > 4.0 * MAX_SPECTRUM as f64 {
                    return Err(too_many());
                }
                out.extend(
                    h.parent()
                        .states_below(e_max)
                        .iter()
                        .filter(|s| s.m > 2 * s.n && s.parity == qbilliard::Parity::Minus)
                        .map(|s| h.line(s.m, s.n)),
                );
            }
            Model::Circle(c) => {
                let z_max = c.zero_of_energy(e_max);
                if z_max * z_max > 4.0 * MAX_SPECTRUM as f64 {
                    return Err(too_many());
                }
                let m = (z_max.floor() as u32).min(MAX_ORDER) as i32;
                let window = CircWindow {
                    m: -m..=m,
                    z_lo: 0.0,
                    z_hi: z_max,
                };
                out.extend(c.window_states(&window)?.iter().map(|s| s.line()));
            }
            Model::HalfCircle(h) => {
                let c = h.disk();
                let z_max = c.zero_of_energy(e_max);
                if z_max * z_max > 4.0 * MAX_SPECTRUM as f64 {
                    return Err(too_many());
                }
                let m = (z_max.floor() as u32).min(MAX_ORDER) as i32;
                let window = CircWindow {
                    m: 1..=m.max(1),
                    z_lo: 0.0,
                    z_hi: z_max,
                };
                out.extend(c.window_states(&window)?.iter().map(HalfCircleBilliard::line));
            }
        }
        out.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.label.cmp(&b.label)));
        Ok(out)
    }

    /// Axis-aligned bounding box `[(x_lo, x_hi), (y_lo, y_hi)]`.
    pub fn bounds(&self) -> [(f64, f64); 2] {
        match self {
            Model::Well(w) => [(w.offset, w.offset + w.width), (0.0, 0.0)],
            Model::Rect(r) => [(0.0, r.lx), (0.0, r.ly)],
            Model::Isosceles(i) => [(0.0, i.side()), (0.0, i.side())],
            Model::Triangle(t) => [(-t.side / 2.0, t.side / 2.0), (0.0, t.height())],
            Model::HalfTriangle(h) => [(0.0, h.parent().side / 2.0), (0.0, h.parent().height())],
            Model::Circle(c) => [(-c.radius, c.radius), (-c.radius, c.radius)],
            Model::HalfCircle(h) => {
                let r = h.disk().radius;
                [(-r, r), (0.0, r)]
            }
        }
    }
}

/// `E(2, 1)/3 · (m² + n² − mn)` for any integers.
fn triangle_level(t: &TriangleBilliard, n: &[i64]) -> f64 {
    let scale = t.energy(2, 1).unwrap_or(f64::NAN) / 3.0;
    scale * ((n[0] * n[0] + n[1] * n[1] - n[0] * n[1]) as f64)
}

fn circle_energy(c: &CircBilliard, n: &[i64]) -> f64 {
    match u32::try_from(n[0]).ok().zip(i32::try_from(n[1]).ok()) {
        Some((n_r, m)) => c.state(m, n_r).map(|s| s.energy).unwrap_or(f64::NAN),
        None => f64::NAN,
    }
}

fn circ_window(d: CircWindow, w: &WindowSpec) -> CircWindow {
    CircWindow {
        m: w.m_min.unwrap_or(*d.m.start())..=w.m_max.unwrap_or(*d.m.end()),
        z_lo: w.z_min.unwrap_or(d.z_lo),
        z_hi: w.z_max.unwrap_or(d.z_hi),
    }
}

fn check_range(field: &str, r: &std::ops::RangeInclusive<u32>) -> Result<()> {
    if r.is_empty() {
        Err(CliError::validation(
            field,
            format!("window {}..={} is empty", r.start(), r.end()),
        ))
    } else {
        Ok(())
    }
}
