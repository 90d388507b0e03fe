//! The circular billiard: Bessel spectrum, normalized states, numerical
//! Gaussian expansion, angular-momentum bookkeeping, WKB radial
//! quantization, closed orbits, and the half-disk fold.
//!
//! States are `N J_|m|(z r/R) e^{imθ}/√(2π)` with `z` the `n_r`-th zero of
//! `J_|m|` and `N = √2/(R |J_{|m|+1}(z)|)`.

mod expand;
mod half;
mod orbits;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::{bessel_j, bessel_zero, brent, BesselZeroTable, MAX_ORDER};
use crate::wavepacket::{
    angular_momentum_moments, Basis, Expansion, GaussianPacket2D, Geometry, PhysicalUnits,
    SpectralLine, StateLabel,
};

pub use expand::{CircWindow, QuadratureGrid};
pub use half::HalfCircleBilliard;
pub use orbits::{closed_orbits, closed_orbits_with, DEFAULT_P_MAX};

/// Relative tolerance for accepting `z` as a zero of `J_|m|`.
const ZERO_CHECK: f64 = 1e-10;

/// Disk of radius `R` with hard walls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircBilliard {
    pub radius: f64,
    pub units: PhysicalUnits,
}

/// One eigenstate `(m, n_r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircState {
    pub m: i32,
    pub n_r: u32,
    pub z: f64,
    pub energy: f64,
    pub norm: f64,
}

impl CircState {
    pub fn label(&self) -> StateLabel {
        StateLabel::Circle {
            m: self.m,
            n_r: self.n_r,
        }
    }

    pub fn line(&self) -> SpectralLine {
        SpectralLine::new(self.label(), self.energy)
    }
}

/// Closed-antiderivative WKB check of one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WkbResidual {
    /// Radial action minus `(n_r + 3/4)π` for the nearest `n_r`.
    pub residual: f64,
    pub n_r: u32,
    /// Inner turning point `|m|R/z`.
    pub r_min: f64,
}

fn order(m: i32) -> Result<u32> {
    let a = m.unsigned_abs();
    if a > MAX_ORDER {
        Err(Error::UnsupportedOrder {
            order: a,
            max: MAX_ORDER,
        })
    } else {
        Ok(a)
    }
}

/// `√(z² − m²) − |m| arccos(|m|/z)`.
fn radial_action(z: f64, m: u32) -> f64 {
    let m = m as f64;
    (z * z - m * m).sqrt() - m * (m / z).acos()
}

impl CircBilliard {
    pub fn new(radius: f64, units: PhysicalUnits) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "radius must be positive, got {radius}"
            )));
        }
        Ok(Self { radius, units })
    }

    pub fn standard(units: PhysicalUnits) -> Self {
        Self {
            radius: units.size,
            units,
        }
    }

    /// `ħ²z²/2μR²`.
    pub fn energy_of_zero(&self, z: f64) -> f64 {
        let u = &self.units;
        u.hbar * u.hbar * z * z / (2.0 * u.mu * self.radius * self.radius)
    }

    /// `R√(2μE)/ħ`.
    pub fn zero_of_energy(&self, e: f64) -> f64 {
        self.radius * (2.0 * self.units.mu * e.max(0.0)).sqrt() / self.units.hbar
    }

    /// `R/v0`.
    pub fn tau(&self, p0: f64) -> f64 {
        self.radius / self.units.speed(p0)
    }

    /// `√2/(R |J_{|m|+1}(z)|)`, valid only at zeros of `J_|m|`.
    pub fn normalization(&self, m: i32, z: f64) -> Result<f64> {
        let a = order(m)?;
        let jm = bessel_j(a, z)?;
        let jm1 = bessel_j(a + 1, z)?;
        if jm.abs() > ZERO_CHECK * jm1.abs().max(1e-300) {
            return Err(Error::InvariantViolation(format!(
                "z = {z} is not a zero of J_{a}: J = {jm:e}"
            )));
        }
        Ok(2f64.sqrt() / (self.radius * jm1.abs()))
    }

    fn make_state(&self, m: i32, n_r: u32, z: f64) -> Result<CircState> {
        Ok(CircState {
            m,
            n_r,
            z,
            energy: self.energy_of_zero(z),
            norm: self.normalization(m, z)?,
        })
    }

    /// State whose zero is recovered from a known energy, skipping the
    /// zero search.
    pub(crate) fn state_at_energy(&self, m: i32, n_r: u32, energy: f64) -> Result<CircState> {
        order(m)?;
        self.make_state(m, n_r, self.zero_of_energy(energy))
    }

    pub fn state(&self, m: i32, n_r: u32) -> Result<CircState> {
        let z = bessel_zero(order(m)?, n_r)?;
        self.make_state(m, n_r, z)
    }

    /// Every state with `|m| <= m_max` and `n_r <= nr_max`.
    pub fn spectrum(&self, m_max: u32, nr_max: u32) -> Result<Vec<CircState>> {
        let table = BesselZeroTable::build(m_max, nr_max)?;
        self.states_from_table(&table, -(m_max as i32)..=(m_max as i32), 0.0, f64::INFINITY)
    }

    pub(crate) fn states_from_table(
        &self,
        table: &BesselZeroTable,
        ms: std::ops::RangeInclusive<i32>,
        z_lo: f64,
        z_hi: f64,
    ) -> Result<Vec<CircState>> {
        let mut out = Vec::new();
        for m in ms {
            for (n_r, z) in table.order(m.unsigned_abs()) {
                if z >= z_lo && z <= z_hi {
                    out.push(self.make_state(m, n_r, z)?);
                }
            }
        }
        Ok(out)
    }

    /// `N J_|m|(z r/R) e^{imθ}/√(2π)`.
    pub fn eigenfunction(&self, state: &CircState, r: f64, theta: f64) -> Result<Complex64> {
        if !(0.0..=self.radius).contains(&r) {
            return Err(Error::OutsideDomain(format!(
                "r = {r} outside the disk of radius {}",
                self.radius
            )));
        }
        Ok(self.eigenfunction_unchecked(state, r, theta))
    }

    pub(crate) fn eigenfunction_unchecked(&self, state: &CircState, r: f64, theta: f64) -> Complex64 {
        let radial = state.norm * crate::special::bessel::jn(state.m.unsigned_abs(), state.z * r / self.radius);
        Complex64::from_polar(radial / (2.0 * PI).sqrt(), state.m as f64 * theta)
    }

    /// `(m_center, Δm)` from the packet's angular-momentum moments.
    pub fn m_window(&self, packet: &GaussianPacket2D) -> (i32, f64) {
        let l = angular_momentum_moments(packet, &self.units);
        let hbar = self.units.hbar;
        ((l.mean / hbar).round() as i32, l.spread / hbar)
    }

    /// Radial action of the centrifugal problem at `E`, against the
    /// nearest `(n_r + 3/4)π`.
    pub fn wkb_residual(&self, e: f64, m: i32) -> Result<WkbResidual> {
        let a = order(m)?;
        let z = self.zero_of_energy(e);
        if !(e > 0.0) || z <= a as f64 {
            return Err(Error::InvalidEnergy(format!(
                "E = {e} is below the centrifugal floor for m = {m}"
            )));
        }
        let phase = radial_action(z, a) / PI - 0.75;
        let n_r = phase.round().max(0.0) as u32;
        Ok(WkbResidual {
            residual: radial_action(z, a) - (n_r as f64 + 0.75) * PI,
            n_r,
            r_min: a as f64 * self.radius / z,
        })
    }

    /// WKB zero: `√(z² − m²) − |m| arccos(|m|/z) = (n_r + 3/4)π`.
    pub fn wkb_zero(&self, m: i32, n_r: u32) -> Result<f64> {
        let a = order(m)?;
        let target = (n_r as f64 + 0.75) * PI;
        let f = |z: f64| radial_action(z, a) - target;
        let lo = (a as f64).max(1e-12);
        // action grows at least like z − |m|π/2
        let hi = lo + target + PI * (a as f64) + 1.0;
        brent(f, lo, hi, 1e-14)
    }

    pub fn wkb_energy(&self, m: i32, n_r: u32) -> Result<f64> {
        Ok(self.energy_of_zero(self.wkb_zero(m, n_r)?))
    }

    pub fn half_circle(&self) -> HalfCircleBilliard {
        HalfCircleBilliard::new(*self)
    }
}

/// `(Σ|a|² mħ, Σ|a|² (mħ)²)` over a circle or half-circle expansion.
pub fn lz_moments(expansion: &Expansion) -> (f64, f64) {
    let hbar = expansion.hbar();
    let m_of = |line: &SpectralLine| match line.label {
        StateLabel::Circle { m, .. } => m as f64,
        StateLabel::HalfCircle { m, .. } => m as f64,
        _ => 0.0,
    };
    (
        expansion.weighted_sum(|l| m_of(l) * hbar),
        expansion.weighted_sum(|l| (m_of(l) * hbar).powi(2)),
    )
}

impl Basis for CircBilliard {
    fn geometry(&self) -> Geometry {
        Geometry::Circle
    }

    /// Zero outside the disk.
    fn eigenfunction(&self, line: &SpectralLine, point: &[f64]) -> Result<Complex64> {
        match line.label {
            StateLabel::Circle { m, n_r } => {
                let (x, y) = (point[0], point[1]);
                let r = x.hypot(y);
                if r > self.radius {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                let s = self.state_at_energy(m, n_r, line.energy)?;
                Ok(self.eigenfunction_unchecked(&s, r, y.atan2(x)))
            }
            other => Err(Error::BasisMismatch {
                basis: Geometry::Circle.to_string(),
                expansion: other.geometry().to_string(),
            }),
        }
    }
}
