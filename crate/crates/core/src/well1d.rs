//! The 1D infinite well on `(d, d + a)`.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::special::{gaussian_trig_overlap, integrate_oscillatory, TrigKind};
use crate::wavepacket::{
    Basis, Expansion, GaussianPacket1D, Geometry, PhysicalUnits, SpectralLine, StateLabel, Term,
};

/// Packets closer than this many `Δx0` to a wall get a warning from the
/// closed-form expansion.
pub const WALL_MARGIN_SPREADS: f64 = 4.0;
/// Half-width of the default truncation window in units of `Δn`.
pub const WINDOW_SPREADS: f64 = 6.0;
/// Gaussian cutoff for quadrature, in units of `b`.
const GAUSS_CUTOFF: f64 = 13.0;
const QUAD_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Well1D {
    pub width: f64,
    pub offset: f64,
    pub units: PhysicalUnits,
}

/// Dominant level and level spread of a packet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NWindow {
    pub center: u32,
    pub spread: f64,
}

impl NWindow {
    /// `[center - 6Δn, center + 6Δn] ∩ [1, ∞)`.
    pub fn range(&self) -> RangeInclusive<u32> {
        let half = WINDOW_SPREADS * self.spread;
        let lo = (self.center as f64 - half).floor().max(1.0) as u32;
        let hi = (self.center as f64 + half).ceil().max(1.0) as u32;
        lo..=hi
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidQuantumNumber("well levels start at n = 1".into()))
    } else {
        Ok(())
    }
}

/// `sin(u)/u`.
fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

impl Well1D {
    pub fn new(width: f64, offset: f64, units: PhysicalUnits) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) || !offset.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "well needs positive width and finite offset, got a = {width}, d = {offset}"
            )));
        }
        Ok(Self {
            width,
            offset,
            units,
        })
    }

    /// Well of width `units.size` starting at the origin.
    pub fn standard(units: PhysicalUnits) -> Self {
        Self {
            width: units.size,
            offset: 0.0,
            units,
        }
    }

    /// `E_0 = ħ²π²/2μa²`.
    pub fn ground_energy(&self) -> f64 {
        let u = &self.units;
        u.hbar * u.hbar * PI * PI / (2.0 * u.mu * self.width * self.width)
    }

    pub fn energy(&self, n: u32) -> Result<f64> {
        check_n(n)?;
        Ok(self.level(n))
    }

    fn level(&self, n: u32) -> f64 {
        (n as f64).powi(2) * self.ground_energy()
    }

    /// `T_rev = 4μa²/πħ`.
    pub fn revival_time(&self) -> f64 {
        4.0 * self.units.mu * self.width * self.width / (PI * self.units.hbar)
    }

    /// Classical round-trip time `2a/v` at momentum `p`.
    pub fn round_trip_time(&self, p: f64) -> f64 {
        2.0 * self.width / self.units.speed(p)
    }

    pub fn line(&self, n: u32) -> SpectralLine {
        SpectralLine::new(StateLabel::Well { n }, self.level(n))
    }

    /// `√(2/a) sin(nπ(x-d)/a)` inside the well, zero outside.
    pub fn eigenfunction(&self, n: u32, x: f64) -> f64 {
        let y = x - self.offset;
        if y <= 0.0 || y >= self.width {
            return 0.0;
        }
        (2.0 / self.width).sqrt() * (n as f64 * PI * y / self.width).sin()
    }

    /// Distance from the packet center to the nearer wall (negative outside).
    pub fn margin(&self, packet: &GaussianPacket1D) -> f64 {
        (packet.x0 - self.offset).min(self.offset + self.width - packet.x0)
    }

    pub fn n_window(&self, packet: &GaussianPacket1D) -> NWindow {
        let n = (packet.p0.abs() * self.width / (PI * self.units.hbar)).round();
        NWindow {
            center: n.max(1.0) as u32,
            spread: self.width / (2.0 * PI * packet.spread()),
        }
    }

    fn expansion<F>(&self, range: RangeInclusive<u32>, coeff: F) -> Result<Expansion>
    where
        F: Fn(u32) -> Result<Complex64> + Sync,
    {
        if *range.start() == 0 {
            return Err(Error::InvalidQuantumNumber("well levels start at n = 1".into()));
        }
        let terms: Vec<Term> = range
            .into_par_iter()
            .map(|n| {
                coeff(n).map(|c| Term {
                    line: self.line(n),
                    coeff: c,
                })
            })
            .collect::<Result<_>>()?;
        Expansion::new(terms, self.units.hbar)
    }

    /// `a_n = ∫ u_n(x) ψ_G(x) dx` over the well by composite quadrature.
    pub fn exact_coefficient(&self, packet: &GaussianPacket1D, n: u32) -> Result<Complex64> {
        check_n(n)?;
        let hbar = self.units.hbar;
        let lo = self.offset.max(packet.x0 - GAUSS_CUTOFF * packet.b);
        let hi = (self.offset + self.width).min(packet.x0 + GAUSS_CUTOFF * packet.b);
        if hi <= lo {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let omega = n as f64 * PI / self.width + packet.p0.abs() / hbar;
        let panel = (packet.b / 2.0).min(4.0 / omega);
        integrate_oscillatory(lo, hi, panel, QUAD_TOL, |x| {
            packet.value(x, hbar) * self.eigenfunction(n, x)
        })
    }

    pub fn coefficients_exact(&self, packet: &GaussianPacket1D, n_max: u32) -> Result<Expansion> {
        self.coefficients_exact_in(packet, 1..=n_max)
    }

    pub fn coefficients_exact_in(
        &self,
        packet: &GaussianPacket1D,
        range: RangeInclusive<u32>,
    ) -> Result<Expansion> {
        self.expansion(range, |n| self.exact_coefficient(packet, n))
    }

    /// Two-Gaussian closed form, exact up to the packet's tails beyond the walls.
    pub fn closed_form_coefficient(&self, packet: &GaussianPacket1D, n: u32) -> Complex64 {
        let kappa = n as f64 * PI / self.width;
        let norm = (2.0 / self.width).sqrt() / (packet.b * PI.sqrt()).sqrt();
        norm * gaussian_trig_overlap(
            TrigKind::Sin,
            kappa,
            packet.x0 - self.offset,
            packet.p0,
            packet.b,
            self.units.hbar,
        )
    }

    pub fn coefficients_closed_form(
        &self,
        packet: &GaussianPacket1D,
        n_max: u32,
    ) -> Result<Expansion> {
        self.coefficients_closed_form_in(packet, 1..=n_max)
    }

    pub fn coefficients_closed_form_in(
        &self,
        packet: &GaussianPacket1D,
        range: RangeInclusive<u32>,
    ) -> Result<Expansion> {
        let mut exp = self.expansion(range, |n| Ok(self.closed_form_coefficient(packet, n)))?;
        let margin = self.margin(packet);
        if margin < WALL_MARGIN_SPREADS * packet.spread() {
            exp.push_warning(format!(
                "packet center is {margin:.4} from a wall, under {WALL_MARGIN_SPREADS} spreads; \
                 closed-form coefficients are unreliable"
            ));
        }
        Ok(exp)
    }

    /// Closed-form expansion over the default window.
    pub fn expand(&self, packet: &GaussianPacket1D) -> Result<Expansion> {
        self.coefficients_closed_form_in(packet, self.n_window(packet).range())
    }

    /// `φ_n(p)`, the Fourier transform of `u_n`.
    pub fn momentum_eigenfunction(&self, n: u32, p: f64) -> Complex64 {
        let hbar = self.units.hbar;
        let a = self.width;
        let k = p * a / hbar;
        let npi = n as f64 * PI;
        // (e^{iθ} - 1)/θ = i e^{iθ/2} sinc(θ/2)
        let t1 = 0.5 * (npi - k);
        let t2 = -0.5 * (npi + k);
        let bracket = Complex64::from_polar(sinc(t1), t1) - Complex64::from_polar(sinc(t2), t2);
        let pref = Complex64::new(0.0, -a / (4.0 * PI * hbar * a).sqrt());
        pref * bracket * Complex64::from_polar(1.0, -p * self.offset / hbar)
    }

    /// `a_n = ∫ φ_n*(p) φ_G(p) dp`.
    pub fn momentum_coefficient(&self, packet: &GaussianPacket1D, n: u32) -> Result<Complex64> {
        check_n(n)?;
        let hbar = self.units.hbar;
        let dp = hbar / packet.b;
        let (lo, hi) = (packet.p0 - GAUSS_CUTOFF * dp, packet.p0 + GAUSS_CUTOFF * dp);
        // phase rate in p: |x0| from φ_G plus up to d + a from φ_n
        let rate = (packet.x0.abs() + self.offset.abs() + self.width) / hbar;
        let panel = (dp / 2.0).min(4.0 / rate);
        integrate_oscillatory(lo, hi, panel, QUAD_TOL, |p| {
            self.momentum_eigenfunction(n, p).conj() * packet.momentum_value(p, hbar)
        })
    }

    pub fn coefficients_momentum_space(
        &self,
        packet: &GaussianPacket1D,
        n_max: u32,
    ) -> Result<Expansion> {
        self.coefficients_momentum_space_in(packet, 1..=n_max)
    }

    pub fn coefficients_momentum_space_in(
        &self,
        packet: &GaussianPacket1D,
        range: RangeInclusive<u32>,
    ) -> Result<Expansion> {
        self.expansion(range, |n| self.momentum_coefficient(packet, n))
    }
}

impl Basis for Well1D {
    fn geometry(&self) -> Geometry {
        Geometry::Well1D
    }

    fn eigenfunction(&self, line: &SpectralLine, point: &[f64]) -> Result<Complex64> {
        match &line.label {
            StateLabel::Well { n } => Ok(Complex64::new(Well1D::eigenfunction(self, *n, point[0]), 0.0)),
            other => Err(Error::BasisMismatch {
                basis: Geometry::Well1D.to_string(),
                expansion: other.geometry().to_string(),
            }),
        }
    }
}
