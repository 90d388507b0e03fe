use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::expand::CircWindow;
use super::{CircBilliard, CircState};
use crate::error::{Error, Result};
use crate::special::bessel::jn;
use crate::wavepacket::{
    Basis, Expansion, GaussianPacket2D, Geometry, SpectralLine, StateLabel, Term,
};
use crate::well1d::WALL_MARGIN_SPREADS;

/// Upper half-disk `y > 0` with states `N J_m(zr/R) √(2/π) sin(mθ)`, `m >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfCircleBilliard {
    disk: CircBilliard,
}

impl HalfCircleBilliard {
    pub(crate) fn new(disk: CircBilliard) -> Self {
        Self { disk }
    }

    pub fn disk(&self) -> &CircBilliard {
        &self.disk
    }

    pub fn state(&self, m: u32, n_r: u32) -> Result<CircState> {
        if m == 0 {
            return Err(Error::InvalidQuantumNumber(
                "half-disk states need m >= 1".into(),
            ));
        }
        self.disk.state(m as i32, n_r)
    }

    pub fn line(state: &CircState) -> SpectralLine {
        SpectralLine::new(
            StateLabel::HalfCircle {
                m: state.m.unsigned_abs(),
                n_r: state.n_r,
            },
            state.energy,
        )
    }

    /// Zero below the diameter and outside the disk.
    pub fn eigenfunction(&self, state: &CircState, r: f64, theta: f64) -> f64 {
        if r > self.disk.radius || !(0.0..=PI).contains(&theta) {
            return 0.0;
        }
        let m = state.m.unsigned_abs();
        state.norm * jn(m, state.z * r / self.disk.radius) * (2.0 / PI).sqrt() * (m as f64 * theta).sin()
    }

    pub fn margin(&self, packet: &GaussianPacket2D) -> f64 {
        (self.disk.radius - packet.x0.hypot(packet.y0)).min(packet.y0)
    }

    /// The parent window folded onto `m >= 1`.
    pub fn default_window(&self, packet: &GaussianPacket2D) -> CircWindow {
        let w = self.disk.default_window(packet);
        let top = w.m.start().abs().max(w.m.end().abs()).max(1);
        let bottom = if *w.m.start() <= 0 && *w.m.end() >= 0 {
            1
        } else {
            w.m.start().abs().min(w.m.end().abs()).max(1)
        };
        CircWindow {
            m: bottom..=top,
            ..w
        }
    }

    /// `i (a_m − a_{−m})` from the full-disk overlaps.
    pub fn coefficients(&self, packet: &GaussianPacket2D, window: &CircWindow) -> Result<Expansion> {
        if *window.m.start() < 1 {
            return Err(Error::InvalidQuantumNumber(
                "half-disk windows start at m = 1".into(),
            ));
        }
        let lo = *window.m.start();
        let hi = *window.m.end();
        let full = CircWindow {
            m: -hi..=hi,
            ..window.clone()
        };
        let states = self.disk.window_states(&full)?;
        let grid = self.disk.default_grid(packet, &full);
        let coeffs = self.disk.overlaps(packet, &states, &grid)?;
        let by_label: HashMap<(i32, u32), Complex64> = states
            .iter()
            .zip(&coeffs)
            .map(|(s, &c)| ((s.m, s.n_r), c))
            .collect();
        let terms: Vec<Term> = states
            .iter()
            .filter(|s| s.m >= lo)
            .map(|s| {
                let plus = by_label[&(s.m, s.n_r)];
                let minus = by_label.get(&(-s.m, s.n_r)).copied().unwrap_or_default();
                Term {
                    line: Self::line(s),
                    coeff: Complex64::i() * (plus - minus),
                }
            })
            .collect();
        let mut exp = Expansion::new(terms, self.disk.units.hbar)?;
        let margin = self.margin(packet);
        if margin < WALL_MARGIN_SPREADS * packet.spread() {
            exp.push_warning(format!(
                "packet center is {margin:.4} from the boundary, under {WALL_MARGIN_SPREADS} spreads"
            ));
        }
        Ok(exp)
    }

    pub fn expand(&self, packet: &GaussianPacket2D) -> Result<Expansion> {
        self.coefficients(packet, &self.default_window(packet))
    }
}

impl Basis for HalfCircleBilliard {
    fn geometry(&self) -> Geometry {
        Geometry::HalfCircle
    }

    fn eigenfunction(&self, line: &SpectralLine, point: &[f64]) -> Result<Complex64> {
        match line.label {
            StateLabel::HalfCircle { m, n_r } => {
                if m == 0 {
                    return Err(Error::InvalidQuantumNumber("half-disk states need m >= 1".into()));
                }
                let s = self.disk.state_at_energy(m as i32, n_r, line.energy)?;
                let (x, y) = (point[0], point[1]);
                Ok(Complex64::new(
                    HalfCircleBilliard::eigenfunction(self, &s, x.hypot(y), y.atan2(x)),
                    0.0,
                ))
            }
            other => Err(Error::BasisMismatch {
                basis: Geometry::HalfCircle.to_string(),
                expansion: other.geometry().to_string(),
            }),
        }
    }
}
