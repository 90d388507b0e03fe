//! Closed-form Gaussian times trigonometric integrals over the real line.

use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigKind {
    Cos,
    Sin,
}

/// `∫ exp(i p0 (x - x0)/ħ) exp(-(x - x0)²/2b²) trig(κ x) dx` over the whole
/// line, for `b > 0`.
///
/// The cosine gives the sum of the two shifted Gaussians, the sine their
/// difference divided by `i`.
pub fn gaussian_trig_overlap(
    kind: TrigKind,
    kappa: f64,
    x0: f64,
    p0: f64,
    b: f64,
    hbar: f64,
) -> Complex64 {
    let k0 = p0 / hbar;
    let scale = b * (2.0 * PI).sqrt() / 2.0;
    let plus = Complex64::from_polar((-0.5 * (b * (kappa + k0)).powi(2)).exp(), kappa * x0);
    let minus = Complex64::from_polar((-0.5 * (b * (k0 - kappa)).powi(2)).exp(), -kappa * x0);
    match kind {
        TrigKind::Cos => (plus + minus) * scale,
        TrigKind::Sin => (plus - minus) * Complex64::new(0.0, -scale),
    }
}
