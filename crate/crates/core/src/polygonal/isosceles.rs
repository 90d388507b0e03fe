use std::ops::RangeInclusive;

use num_complex::Complex64;
use rayon::prelude::*;

use super::rect::RectBilliard;
use crate::error::{Error, Result};
use crate::wavepacket::{
    Basis, Expansion, GaussianPacket2D, Geometry, PhysicalUnits, SpectralLine, StateLabel, Term,
};
use crate::well1d::WALL_MARGIN_SPREADS;

/// The half-square `{0 < y < x < a}` with states `√2·w⁻(n, m)`, `n > m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoscelesBilliard {
    square: RectBilliard,
}

impl RectBilliard {
    /// Fold the square along its diagonal.
    pub fn fold_isosceles(&self) -> Result<IsoscelesBilliard> {
        if !self.is_square() {
            return Err(Error::FoldUnsupported(format!(
                "diagonal fold needs a square, got {} x {}",
                self.lx, self.ly
            )));
        }
        Ok(IsoscelesBilliard { square: *self })
    }
}

fn check_state(n: u32, m: u32) -> Result<()> {
    if m >= 1 && n > m {
        Ok(())
    } else {
        Err(Error::InvalidQuantumNumber(format!(
            "half-square states need n > m >= 1, got ({n}, {m})"
        )))
    }
}

impl IsoscelesBilliard {
    pub fn standard(units: PhysicalUnits) -> Self {
        Self {
            square: RectBilliard::square(units),
        }
    }

    pub fn side(&self) -> f64 {
        self.square.lx
    }

    pub fn units(&self) -> PhysicalUnits {
        self.square.units
    }

    pub fn square(&self) -> &RectBilliard {
        &self.square
    }

    pub fn energy(&self, n: u32, m: u32) -> Result<f64> {
        check_state(n, m)?;
        self.square.energy(n, m)
    }

    pub fn revival_time(&self) -> f64 {
        self.square.axis_revival_times().0
    }

    pub fn line(&self, n: u32, m: u32) -> SpectralLine {
        SpectralLine::new(StateLabel::Isosceles { n, m }, self.square.line(n, m).energy)
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        y > 0.0 && y < x && x < self.side()
    }

    /// `u_n(x)u_m(y) − u_m(x)u_n(y)` inside the triangle, 0 outside.
    pub fn eigenfunction(&self, n: u32, m: u32, x: f64, y: f64) -> f64 {
        if !(y >= 0.0 && y <= x && x <= self.side()) {
            return 0.0;
        }
        self.square.eigenfunction(n, m, x, y) - self.square.eigenfunction(m, n, x, y)
    }

    /// Distance from the packet center to the nearest edge.
    pub fn margin(&self, packet: &GaussianPacket2D) -> f64 {
        let (x, y) = (packet.x0, packet.y0);
        (self.side() - x).min(y).min((x - y) / 2f64.sqrt())
    }

    /// One range covering both per-axis windows of the parent square.
    pub fn default_window(&self, packet: &GaussianPacket2D) -> RangeInclusive<u32> {
        let w = self.square.default_window(packet);
        let lo = (*w.x.start()).min(*w.y.start());
        let hi = (*w.x.end()).max(*w.y.end());
        lo..=hi
    }

    /// `a_n^x a_m^y − a_m^x a_n^y` for every `n > m` in `range`.
    pub fn coefficients(
        &self,
        packet: &GaussianPacket2D,
        range: RangeInclusive<u32>,
    ) -> Result<Expansion> {
        let xw = self.square.x_well();
        let (px, py) = (packet.x_part(), packet.y_part());
        let ax: Vec<Complex64> = range.clone().map(|n| xw.closed_form_coefficient(&px, n)).collect();
        let ay: Vec<Complex64> = range.clone().map(|n| xw.closed_form_coefficient(&py, n)).collect();
        let lo = *range.start();
        if lo == 0 {
            return Err(Error::InvalidQuantumNumber("levels start at 1".into()));
        }
        let len = ax.len();
        let terms: Vec<Term> = (0..len)
            .into_par_iter()
            .flat_map_iter(|i| {
                let (ax, ay) = (&ax, &ay);
                (0..i).map(move |j| Term {
                    line: self.line(lo + i as u32, lo + j as u32),
                    coeff: ax[i] * ay[j] - ax[j] * ay[i],
                })
            })
            .collect();
        let mut exp = Expansion::new(terms, self.units().hbar)?;
        let margin = self.margin(packet);
        if margin < WALL_MARGIN_SPREADS * packet.spread() {
            exp.push_warning(format!(
                "packet center is {margin:.4} from an edge, under {WALL_MARGIN_SPREADS} spreads"
            ));
        }
        Ok(exp)
    }

    pub fn expand(&self, packet: &GaussianPacket2D) -> Result<Expansion> {
        self.coefficients(packet, self.default_window(packet))
    }
}

impl Basis for IsoscelesBilliard {
    fn geometry(&self) -> Geometry {
        Geometry::Isosceles
    }

    fn eigenfunction(&self, line: &SpectralLine, point: &[f64]) -> Result<Complex64> {
        match line.label {
            StateLabel::Isosceles { n, m } => Ok(Complex64::new(
                IsoscelesBilliard::eigenfunction(self, n, m, point[0], point[1]),
                0.0,
            )),
            other => Err(Error::BasisMismatch {
                basis: Geometry::Isosceles.to_string(),
                expansion: other.geometry().to_string(),
            }),
        }
    }
}
