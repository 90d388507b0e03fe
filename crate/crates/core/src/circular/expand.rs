use std::f64::consts::PI;
use std::ops::RangeInclusive;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use super::{CircBilliard, CircState};
use crate::error::{Error, Result};
use crate::special::bessel::jn;
use crate::special::{BesselZeroTable, GaussLegendreRule};
use crate::wavepacket::{Expansion, GaussianPacket2D, Term};
use crate::well1d::{WALL_MARGIN_SPREADS, WINDOW_SPREADS};

/// Largest tolerated change of a coefficient when the grid is refined.
const GRID_TOL: f64 = 1e-8;
/// States re-evaluated on the refined grid.
const GRID_PROBES: usize = 8;
/// Radial cut of the packet, in units of `b`.
const RADIAL_REACH: f64 = 12.0;
const RADIAL_ORDER: usize = 20;

/// States kept in a circular expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct CircWindow {
    pub m: RangeInclusive<i32>,
    pub z_lo: f64,
    pub z_hi: f64,
}

/// Polar product grid: composite Gauss-Legendre in `r`, uniform in `θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureGrid {
    pub r_lo: f64,
    pub r_hi: f64,
    pub radial_panels: usize,
    pub radial_order: usize,
    pub angular_points: usize,
}

impl QuadratureGrid {
    pub fn refined(&self) -> Self {
        Self {
            radial_panels: 2 * self.radial_panels,
            angular_points: 2 * self.angular_points,
            ..*self
        }
    }
}

impl CircBilliard {
    /// `m_c ± 6Δm` and `|z − z_peak| <= 6RΔp/ħ` with `Δp = ħ/(√2 b)`.
    pub fn default_window(&self, packet: &GaussianPacket2D) -> CircWindow {
        let (mc, dm) = self.m_window(packet);
        let half = (WINDOW_SPREADS * dm).ceil() as i32;
        let z_peak = self.zero_of_energy(packet.mean_energy(&self.units));
        let dz = WINDOW_SPREADS * self.radius / (2f64.sqrt() * packet.b);
        CircWindow {
            m: (mc - half)..=(mc + half),
            z_lo: (z_peak - dz).max(0.0),
            z_hi: z_peak + dz,
        }
    }

    /// Grid resolving both the packet and the fastest state in `window`.
    pub fn default_grid(&self, packet: &GaussianPacket2D, window: &CircWindow) -> QuadratureGrid {
        let b = packet.b;
        let rho = packet.x0.hypot(packet.y0);
        let r_lo = (rho - RADIAL_REACH * b).max(0.0);
        let r_hi = (rho + RADIAL_REACH * b).min(self.radius);
        let k_packet = packet.momentum() / self.units.hbar + 8.0 / b;
        let rate = window.z_hi / self.radius + k_packet;
        let width = (b / 2.0).min(6.0 / rate);
        let radial_panels = (((r_hi - r_lo) / width).ceil() as usize).max(1);
        let m_abs = window.m.start().unsigned_abs().max(window.m.end().unsigned_abs()) as usize;
        let band = (2.0 * r_hi * k_packet).ceil() as usize + 2 * m_abs + 16;
        QuadratureGrid {
            r_lo,
            r_hi,
            radial_panels,
            radial_order: RADIAL_ORDER,
            angular_points: band.max(8 * (m_abs + 1)).next_power_of_two(),
        }
    }

    pub fn window_states(&self, window: &CircWindow) -> Result<Vec<CircState>> {
        let m_max = window.m.start().unsigned_abs().max(window.m.end().unsigned_abs());
        let table = BesselZeroTable::below(m_max, window.z_hi)?;
        self.states_from_table(&table, window.m.clone(), window.z_lo, window.z_hi)
    }

    /// `a = ∫ conj(w) ψ` over the grid for each state.
    pub fn overlaps(
        &self,
        packet: &GaussianPacket2D,
        states: &[CircState],
        grid: &QuadratureGrid,
    ) -> Result<Vec<Complex64>> {
        if states.is_empty() {
            return Ok(Vec::new());
        }
        let m_lo = states.iter().map(|s| s.m).min().unwrap();
        let m_hi = states.iter().map(|s| s.m).max().unwrap();
        let n_ang = grid.angular_points;
        if 2 * (m_lo.unsigned_abs().max(m_hi.unsigned_abs()) as usize) >= n_ang {
            return Err(Error::InvalidParameter(format!(
                "{n_ang} angular points cannot resolve |m| up to {}",
                m_lo.unsigned_abs().max(m_hi.unsigned_abs())
            )));
        }
        let hbar = self.units.hbar;
        let nodes = GaussLegendreRule::new(grid.radial_order).composite(
            grid.r_lo,
            grid.r_hi,
            grid.radial_panels,
        );
        let fft: Arc<dyn Fft<f64>> = FftPlanner::new().plan_fft_forward(n_ang);
        let d_theta = 2.0 * PI / n_ang as f64;

        // angular Fourier coefficients ∫ e^{-imθ} ψ(r, θ) dθ per radial node
        let rows: Vec<Vec<Complex64>> = nodes
            .par_iter()
            .map(|&(r, _)| {
                let mut buf: Vec<Complex64> = (0..n_ang)
                    .map(|k| {
                        let (s, c) = (k as f64 * d_theta).sin_cos();
                        packet.value(r * c, r * s, hbar)
                    })
                    .collect();
                fft.process(&mut buf);
                (m_lo..=m_hi)
                    .map(|m| buf[m.rem_euclid(n_ang as i32) as usize] * d_theta)
                    .collect()
            })
            .collect();

        let inv_sqrt_2pi = 1.0 / (2.0 * PI).sqrt();
        let coeffs = states
            .par_iter()
            .map(|s| {
                let col = (s.m - m_lo) as usize;
                let order = s.m.unsigned_abs();
                let scale = s.z / self.radius;
                let sum: Complex64 = nodes
                    .iter()
                    .zip(&rows)
                    .map(|(&(r, w), row)| row[col] * (w * r * jn(order, scale * r)))
                    .sum();
                sum * (s.norm * inv_sqrt_2pi)
            })
            .collect::<Vec<_>>();
        if let Some(bad) = coeffs.iter().find(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite(format!("circular coefficient {bad}")));
        }
        Ok(coeffs)
    }

    /// Refine the grid on the largest coefficients and fail if they move.
    fn check_grid(
        &self,
        packet: &GaussianPacket2D,
        states: &[CircState],
        coeffs: &[Complex64],
        grid: &QuadratureGrid,
    ) -> Result<()> {
        let mut order: Vec<usize> = (0..states.len()).collect();
        order.sort_by(|&i, &j| coeffs[j].norm_sqr().total_cmp(&coeffs[i].norm_sqr()));
        order.truncate(GRID_PROBES);
        let probes: Vec<CircState> = order.iter().map(|&i| states[i]).collect();
        let fine = self.overlaps(packet, &probes, &grid.refined())?;
        let worst = order
            .iter()
            .zip(&fine)
            .map(|(&i, f)| (coeffs[i] - f).norm())
            .fold(0.0, f64::max);
        if worst > GRID_TOL {
            return Err(Error::Accuracy {
                achieved: worst,
                target: GRID_TOL,
            });
        }
        Ok(())
    }

    pub(crate) fn margin_warning(&self, packet: &GaussianPacket2D) -> Option<String> {
        let rho = packet.x0.hypot(packet.y0);
        let margin = self.radius - rho;
        (margin < WALL_MARGIN_SPREADS * packet.spread()).then(|| {
            format!("packet center is {margin:.4} from the wall, under {WALL_MARGIN_SPREADS} spreads")
        })
    }

    /// Expansion over `window` with the default grid and a refinement check.
    pub fn coefficients(&self, packet: &GaussianPacket2D, window: &CircWindow) -> Result<Expansion> {
        let states = self.window_states(window)?;
        let grid = self.default_grid(packet, window);
        let coeffs = self.overlaps(packet, &states, &grid)?;
        self.check_grid(packet, &states, &coeffs, &grid)?;
        let terms = states
            .iter()
            .zip(coeffs)
            .map(|(s, c)| Term {
                line: s.line(),
                coeff: c,
            })
            .collect();
        let mut exp = Expansion::new(terms, self.units.hbar)?;
        if let Some(w) = self.margin_warning(packet) {
            exp.push_warning(w);
        }
        Ok(exp)
    }

    pub fn expand(&self, packet: &GaussianPacket2D) -> Result<Expansion> {
        self.coefficients(packet, &self.default_window(packet))
    }
}
