use std::f64::consts::PI;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::wavepacket::{
    Basis, Expansion, GaussianPacket2D, Geometry, Parity, PhysicalUnits, SpectralLine,
    StateLabel, Term,
};
use crate::well1d::{Well1D, WALL_MARGIN_SPREADS};

/// `[0, Lx] × [0, Ly]` with hard walls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectBilliard {
    pub lx: f64,
    pub ly: f64,
    pub units: PhysicalUnits,
}

/// Whether all level phases realign at a common time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RevivalStatus {
    Common(f64),
    /// `Lx²/Ly²` is not a rational with a small denominator.
    Incommensurate,
}

/// Per-axis level ranges of a separable expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisWindows {
    pub x: RangeInclusive<u32>,
    pub y: RangeInclusive<u32>,
}

/// Largest denominator accepted when testing `Lx²/Ly²` for rationality.
const MAX_DENOMINATOR: u64 = 1000;

/// Continued-fraction approximation `r/s` of `x` within `tol`, if one exists
/// with `s <= MAX_DENOMINATOR`.
fn rational(x: f64, tol: f64) -> Option<(u64, u64)> {
    let (mut h0, mut h1) = (0u64, 1u64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e12 {
            return None;
        }
        let a = a as u64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > MAX_DENOMINATOR {
            return None;
        }
        if (h2 as f64 / k2 as f64 - x).abs() <= tol * x.abs().max(1.0) {
            return Some((h2, k2));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a as f64;
        if frac == 0.0 {
            return None;
        }
        v = 1.0 / frac;
    }
    None
}

impl RectBilliard {
    pub fn new(lx: f64, ly: f64, units: PhysicalUnits) -> Result<Self> {
        for (name, l) in [("Lx", lx), ("Ly", ly)] {
            if !(l > 0.0 && l.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {l}")));
            }
        }
        Ok(Self { lx, ly, units })
    }

    /// Square of side `units.size`.
    pub fn square(units: PhysicalUnits) -> Self {
        Self {
            lx: units.size,
            ly: units.size,
            units,
        }
    }

    pub fn is_square(&self) -> bool {
        (self.lx - self.ly).abs() <= 1e-12 * self.lx.max(self.ly)
    }

    pub fn x_well(&self) -> Well1D {
        Well1D {
            width: self.lx,
            offset: 0.0,
            units: self.units,
        }
    }

    pub fn y_well(&self) -> Well1D {
        Well1D {
            width: self.ly,
            offset: 0.0,
            units: self.units,
        }
    }

    /// `ħ²π²(nx²/Lx² + ny²/Ly²)/2μ`.
    pub fn energy(&self, nx: u32, ny: u32) -> Result<f64> {
        if nx == 0 || ny == 0 {
            return Err(Error::InvalidQuantumNumber(format!(
                "rectangle levels need nx, ny >= 1, got ({nx}, {ny})"
            )));
        }
        Ok(self.level(nx, ny))
    }

    fn level(&self, nx: u32, ny: u32) -> f64 {
        let u = &self.units;
        let (nx, ny) = (nx as f64, ny as f64);
        u.hbar * u.hbar * PI * PI / (2.0 * u.mu)
            * (nx * nx / (self.lx * self.lx) + ny * ny / (self.ly * self.ly))
    }

    /// `T_rev` of each axis, `4μL²/πħ`.
    pub fn axis_revival_times(&self) -> (f64, f64) {
        (self.x_well().revival_time(), self.y_well().revival_time())
    }

    pub fn revival_status(&self) -> RevivalStatus {
        let (tx, ty) = self.axis_revival_times();
        match rational(tx / ty, 1e-12) {
            // tx/ty = r/s, so s·tx = r·ty
            Some((_, s)) => RevivalStatus::Common(s as f64 * tx),
            None => RevivalStatus::Incommensurate,
        }
    }

    /// Classical bounce period `2a/v0` along the x side.
    pub fn tau(&self, p0: f64) -> f64 {
        2.0 * self.lx / self.units.speed(p0)
    }

    pub fn line(&self, nx: u32, ny: u32) -> SpectralLine {
        SpectralLine::new(StateLabel::Rect { nx, ny }, self.level(nx, ny))
    }

    /// `u_nx(x) u_ny(y)`.
    pub fn eigenfunction(&self, nx: u32, ny: u32, x: f64, y: f64) -> f64 {
        self.x_well().eigenfunction(nx, x) * self.y_well().eigenfunction(ny, y)
    }

    /// Square eigenstates recombined into `w⁻`, `w⁺` or `w⁰`.
    pub fn symmetry_eigenfunction(&self, state: &SquareSymmetryState, x: f64, y: f64) -> f64 {
        let (n, m) = (state.n, state.m);
        let direct = self.eigenfunction(n, m, x, y);
        let swapped = self.eigenfunction(m, n, x, y);
        match state.parity {
            Parity::Minus => (direct - swapped) / 2f64.sqrt(),
            Parity::Plus => (direct + swapped) / 2f64.sqrt(),
            Parity::Zero => direct,
        }
    }

    pub fn default_window(&self, packet: &GaussianPacket2D) -> AxisWindows {
        AxisWindows {
            x: self.x_well().n_window(&packet.x_part()).range(),
            y: self.y_well().n_window(&packet.y_part()).range(),
        }
    }

    fn margin_warnings(&self, packet: &GaussianPacket2D) -> Vec<String> {
        let margin = self
            .x_well()
            .margin(&packet.x_part())
            .min(self.y_well().margin(&packet.y_part()));
        if margin < WALL_MARGIN_SPREADS * packet.spread() {
            vec![format!(
                "packet center is {margin:.4} from a wall, under {WALL_MARGIN_SPREADS} spreads"
            )]
        } else {
            Vec::new()
        }
    }

    /// Closed-form 1D expansions of the two packet factors.
    pub fn axis_expansions(
        &self,
        packet: &GaussianPacket2D,
        window: &AxisWindows,
    ) -> Result<(Expansion, Expansion)> {
        let ex = self
            .x_well()
            .coefficients_closed_form_in(&packet.x_part(), window.x.clone())?;
        let ey = self
            .y_well()
            .coefficients_closed_form_in(&packet.y_part(), window.y.clone())?;
        Ok((ex, ey))
    }

    /// `a(nx, ny) = a_nx a_ny`.
    pub fn coefficients(&self, packet: &GaussianPacket2D, window: &AxisWindows) -> Result<Expansion> {
        let (ex, ey) = self.axis_expansions(packet, window)?;
        let terms: Vec<Term> = ex
            .terms()
            .par_iter()
            .flat_map_iter(|tx| {
                let StateLabel::Well { n: nx } = tx.line.label else {
                    unreachable!()
                };
                ey.terms().iter().map(move |ty| {
                    let StateLabel::Well { n: ny } = ty.line.label else {
                        unreachable!()
                    };
                    Term {
                        line: self.line(nx, ny),
                        coeff: tx.coeff * ty.coeff,
                    }
                })
            })
            .collect();
        Ok(Expansion::new(terms, self.units.hbar)?.with_warnings(self.margin_warnings(packet)))
    }

    pub fn expand(&self, packet: &GaussianPacket2D) -> Result<Expansion> {
        self.coefficients(packet, &self.default_window(packet))
    }
}

impl Basis for RectBilliard {
    fn geometry(&self) -> Geometry {
        Geometry::Rectangle
    }

    fn eigenfunction(&self, line: &SpectralLine, point: &[f64]) -> Result<Complex64> {
        match line.label {
            StateLabel::Rect { nx, ny } => Ok(Complex64::new(
                RectBilliard::eigenfunction(self, nx, ny, point[0], point[1]),
                0.0,
            )),
            other => Err(Error::BasisMismatch {
                basis: Geometry::Rectangle.to_string(),
                expansion: other.geometry().to_string(),
            }),
        }
    }
}

/// Symmetry-adapted square state: `w⁻`, `w⁺` for `n != m`, `w⁰` for `n = m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SquareSymmetryState {
    pub n: u32,
    pub m: u32,
    pub parity: Parity,
}

impl SquareSymmetryState {
    pub fn new(n: u32, m: u32, parity: Parity) -> Result<Self> {
        let ok = n >= 1
            && m >= 1
            && match parity {
                Parity::Zero => n == m,
                Parity::Minus | Parity::Plus => n != m,
            };
        if ok {
            Ok(Self { n, m, parity })
        } else {
            Err(Error::InvalidQuantumNumber(format!(
                "square state ({n}, {m}) cannot carry parity {parity}"
            )))
        }
    }
}
