use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `ħ`, the particle mass `μ`, and the well size (`a` or `R`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalUnits {
    pub hbar: f64,
    pub mu: f64,
    pub size: f64,
}

impl PhysicalUnits {
    pub fn new(hbar: f64, mu: f64, size: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("mu", mu), ("size", size)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self { hbar, mu, size })
    }

    /// Same `ħ` and `μ` with a different well size.
    pub fn with_size(self, size: f64) -> Result<Self> {
        Self::new(self.hbar, self.mu, size)
    }

    /// Speed of a particle with momentum `p`.
    pub fn speed(&self, p: f64) -> f64 {
        p.abs() / self.mu
    }
}

impl Default for PhysicalUnits {
    /// `ħ = 2μ = 1`, unit well size.
    fn default() -> Self {
        Self {
            hbar: 1.0,
            mu: 0.5,
            size: 1.0,
        }
    }
}

fn check_width(b: f64) -> Result<()> {
    if b > 0.0 && b.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "packet width b must be positive, got {b}"
        )))
    }
}

/// 1D Gaussian with center `x0`, momentum `p0` and width parameter `b = αħ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacket1D {
    pub x0: f64,
    pub p0: f64,
    pub b: f64,
}

impl GaussianPacket1D {
    pub fn new(x0: f64, p0: f64, b: f64) -> Result<Self> {
        check_width(b)?;
        Ok(Self { x0, p0, b })
    }

    /// Packet with position spread `Δx0` (so `b = √2 Δx0`).
    pub fn with_spread(x0: f64, p0: f64, dx0: f64) -> Result<Self> {
        Self::new(x0, p0, dx0 * 2f64.sqrt())
    }

    /// `Δx0 = b/√2`.
    pub fn spread(&self) -> f64 {
        self.b / 2f64.sqrt()
    }

    /// `ψ_G(x, 0)`.
    pub fn value(&self, x: f64, hbar: f64) -> Complex64 {
        let u = x - self.x0;
        let amp = (-(u * u) / (2.0 * self.b * self.b)).exp() / (self.b * PI.sqrt()).sqrt();
        Complex64::from_polar(amp, self.p0 * u / hbar)
    }

    /// `φ_G(p, 0)`, the momentum-space amplitude.
    pub fn momentum_value(&self, p: f64, hbar: f64) -> Complex64 {
        let alpha = self.b / hbar;
        let dp = p - self.p0;
        let amp = (alpha / PI.sqrt()).sqrt() * (-(alpha * alpha) * dp * dp / 2.0).exp();
        Complex64::from_polar(amp, -p * self.x0 / hbar)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments1D {
    pub x_mean: f64,
    pub x_spread: f64,
    pub p_mean: f64,
    pub p_spread: f64,
    pub energy: f64,
}

/// Analytic position, momentum and energy moments of a 1D packet.
pub fn packet_moments_1d(packet: &GaussianPacket1D, units: &PhysicalUnits) -> Moments1D {
    let b = packet.b;
    let hbar = units.hbar;
    Moments1D {
        x_mean: packet.x0,
        x_spread: b / 2f64.sqrt(),
        p_mean: packet.p0,
        p_spread: hbar / (2f64.sqrt() * b),
        energy: (packet.p0 * packet.p0 + hbar * hbar / (2.0 * b * b)) / (2.0 * units.mu),
    }
}

/// Product of two 1D Gaussians sharing the width parameter `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacket2D {
    pub x0: f64,
    pub y0: f64,
    pub p0x: f64,
    pub p0y: f64,
    pub b: f64,
}

impl GaussianPacket2D {
    pub fn new(x0: f64, y0: f64, p0x: f64, p0y: f64, b: f64) -> Result<Self> {
        check_width(b)?;
        Ok(Self {
            x0,
            y0,
            p0x,
            p0y,
            b,
        })
    }

    pub fn with_spread(x0: f64, y0: f64, p0x: f64, p0y: f64, dx0: f64) -> Result<Self> {
        Self::new(x0, y0, p0x, p0y, dx0 * 2f64.sqrt())
    }

    /// Momentum `p0` launched at angle `theta` (radians) from the x axis.
    pub fn launched(x0: f64, y0: f64, p0: f64, theta: f64, dx0: f64) -> Result<Self> {
        Self::with_spread(x0, y0, p0 * theta.cos(), p0 * theta.sin(), dx0)
    }

    pub fn spread(&self) -> f64 {
        self.b / 2f64.sqrt()
    }

    pub fn momentum(&self) -> f64 {
        self.p0x.hypot(self.p0y)
    }

    pub fn x_part(&self) -> GaussianPacket1D {
        GaussianPacket1D {
            x0: self.x0,
            p0: self.p0x,
            b: self.b,
        }
    }

    pub fn y_part(&self) -> GaussianPacket1D {
        GaussianPacket1D {
            x0: self.y0,
            p0: self.p0y,
            b: self.b,
        }
    }

    pub fn value(&self, x: f64, y: f64, hbar: f64) -> Complex64 {
        self.x_part().value(x, hbar) * self.y_part().value(y, hbar)
    }

    /// `⟨E⟩ = (p0x² + p0y² + ħ²/b²)/2μ`.
    pub fn mean_energy(&self, units: &PhysicalUnits) -> f64 {
        let h = units.hbar;
        (self.p0x * self.p0x + self.p0y * self.p0y + h * h / (self.b * self.b)) / (2.0 * units.mu)
    }
}

/// `⟨L_z⟩`, `⟨L_z²⟩` and `ΔL_z` of a 2D Gaussian about the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularMomentum {
    pub mean: f64,
    pub mean_sq: f64,
    pub spread: f64,
}

pub fn angular_momentum_moments(
    packet: &GaussianPacket2D,
    units: &PhysicalUnits,
) -> AngularMomentum {
    let GaussianPacket2D {
        x0,
        y0,
        p0x,
        p0y,
        b,
    } = *packet;
    let h = units.hbar;
    let mean = x0 * p0y - y0 * p0x;
    let variance = b * b / 2.0 * (p0x * p0x + p0y * p0y) + h * h / (2.0 * b * b) * (x0 * x0 + y0 * y0);
    AngularMomentum {
        mean,
        mean_sq: mean * mean + variance,
        spread: variance.sqrt(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::GaussLegendreRule;

    fn units() -> PhysicalUnits {
        PhysicalUnits::default()
    }

    #[test]
    fn centered_packet_moments() {
        let p = GaussianPacket1D::new(0.5, 0.0, 0.05 * 2f64.sqrt()).unwrap();
        let m = packet_moments_1d(&p, &units());
        assert!((m.x_spread - 0.05).abs() < 1e-15);
        assert!((m.energy - 100.0).abs() < 1e-10);
        assert_eq!(m.p_mean, 0.0);
    }

    #[test]
    fn moving_packet_energy_against_quadrature() {
        let p0 = 400.0 * PI;
        let p = GaussianPacket1D::new(0.0, p0, 0.05 * 2f64.sqrt()).unwrap();
        let m = packet_moments_1d(&p, &units());
        assert!((m.energy - (p0 * p0 + 100.0)).abs() < 1e-6);

        // <p²> in momentum space by quadrature of |φ_G|² p²
        let rule = GaussLegendreRule::new(40);
        let width = 1.0 / p.b;
        let p2 = rule.integrate_composite(p0 - 14.0 * width, p0 + 14.0 * width, 20, |q| {
            p.momentum_value(q, 1.0).norm_sqr() * q * q
        });
        assert!((p2 / (2.0 * 0.5) - m.energy).abs() / m.energy < 1e-12);
    }

    #[test]
    fn packet_normalized_in_both_spaces() {
        let p = GaussianPacket1D::new(0.2, 30.0, 0.1).unwrap();
        let rule = GaussLegendreRule::new(30);
        let nx = rule.integrate_composite(-1.5, 1.9, 40, |x| p.value(x, 1.0).norm_sqr());
        let np = rule.integrate_composite(-150.0, 210.0, 40, |q| p.momentum_value(q, 1.0).norm_sqr());
        assert!((nx - 1.0).abs() < 1e-12);
        assert!((np - 1.0).abs() < 1e-12);
    }

    #[test]
    fn angular_momentum_cases() {
        let u = units();
        let p = GaussianPacket2D::new(0.0, 0.0, 0.0, 100.0, 0.07).unwrap();
        let l = angular_momentum_moments(&p, &u);
        assert_eq!(l.mean, 0.0);
        assert!((l.spread - 0.07 * 100.0 / 2f64.sqrt()).abs() < 1e-12);

        let p = GaussianPacket2D::new(0.7, 0.0, 0.0, 100.0, 0.07).unwrap();
        assert!((angular_momentum_moments(&p, &u).mean - 70.0).abs() < 1e-12);

        let p = GaussianPacket2D::new(0.0, 0.0, 0.0, 0.0, 0.07).unwrap();
        assert_eq!(angular_momentum_moments(&p, &u).mean_sq, 0.0);
    }

    #[test]
    fn angular_spread_is_error_propagation() {
        // ΔL = sqrt(p² Δr² + r² Δp²) with Δr = b/√2, Δp = ħ/(√2 b)
        let u = units();
        let p = GaussianPacket2D::new(0.4, 0.0, 0.0, 80.0, 0.05).unwrap();
        let l = angular_momentum_moments(&p, &u);
        let dr = p.b / 2f64.sqrt();
        let dp = u.hbar / (2f64.sqrt() * p.b);
        let prop = (80.0f64.powi(2) * dr * dr + 0.4f64.powi(2) * dp * dp).sqrt();
        assert!((l.spread - prop).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonpositive_width() {
        assert!(GaussianPacket1D::new(0.0, 0.0, 0.0).is_err());
        assert!(GaussianPacket2D::new(0.0, 0.0, 0.0, 0.0, -1.0).is_err());
        assert!(PhysicalUnits::new(1.0, 0.0, 1.0).is_err());
    }
}
