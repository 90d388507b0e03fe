//! Semiclassical periods and quantization for 1D confining potentials.
//!
//! The half-period integrals are split at the midpoint of the classically
//! allowed interval and mapped with `x = a + s²` and `x = b - s²`, which
//! removes the inverse square root at smooth turning points.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::special::{brent, GaussLegendreRule};
use crate::wavepacket::PhysicalUnits;

const RULE_ORDER: usize = 48;
const RULE_PANELS: usize = 4;
const TURNING_XTOL: f64 = 1e-15;
const ENERGY_RTOL: f64 = 1e-14;

/// Phase constant at a turning point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Matching {
    /// Linear turning point, `C = 1/4`.
    Smooth,
    /// Infinite wall, `C = 1/2`.
    Wall,
}

impl Matching {
    pub fn value(self) -> f64 {
        match self {
            Matching::Smooth => 0.25,
            Matching::Wall => 0.5,
        }
    }
}

/// Where a turning point sits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TurningPoint {
    /// Independent of energy (a hard wall, or `r = 0`).
    Fixed(f64),
    /// Solve `V(x) = E` between this limit and the potential minimum.
    Solve(f64),
}

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Confining potential with one allowed interval at every bound energy.
#[derive(Clone)]
pub struct Potential1D {
    v: Evaluator,
    pub left: TurningPoint,
    pub right: TurningPoint,
    /// Location of the minimum of `V` on the allowed interval.
    pub bottom: f64,
    pub c_left: Matching,
    pub c_right: Matching,
    pub units: PhysicalUnits,
}

impl fmt::Debug for Potential1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Potential1D")
            .field("left", &self.left)
            .field("right", &self.right)
            .field("bottom", &self.bottom)
            .field("c_left", &self.c_left)
            .field("c_right", &self.c_right)
            .finish_non_exhaustive()
    }
}

impl Potential1D {
    pub fn new<F>(
        v: F,
        left: TurningPoint,
        right: TurningPoint,
        bottom: f64,
        (c_left, c_right): (Matching, Matching),
        units: PhysicalUnits,
    ) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let x = |t: TurningPoint| match t {
            TurningPoint::Fixed(x) | TurningPoint::Solve(x) => x,
        };
        if !(x(left) <= bottom && bottom <= x(right)) || x(left) >= x(right) {
            return Err(Error::InvalidParameter(format!(
                "turning-point hints {left:?}, {right:?} must enclose the minimum at {bottom}"
            )));
        }
        Ok(Self {
            v: Arc::new(v),
            left,
            right,
            bottom,
            c_left,
            c_right,
            units,
        })
    }

    /// `μω²x²/2` centered at the origin.
    pub fn harmonic(omega: f64, units: PhysicalUnits) -> Result<Self> {
        let k = 0.5 * units.mu * omega * omega;
        Self::new(
            move |x| k * x * x,
            TurningPoint::Solve(-1e150),
            TurningPoint::Solve(1e150),
            0.0,
            (Matching::Smooth, Matching::Smooth),
            units,
        )
    }

    /// `λx⁴` centered at the origin.
    pub fn quartic(lambda: f64, units: PhysicalUnits) -> Result<Self> {
        Self::new(
            move |x| lambda * x.powi(4),
            TurningPoint::Solve(-1e75),
            TurningPoint::Solve(1e75),
            0.0,
            (Matching::Smooth, Matching::Smooth),
            units,
        )
    }

    /// `V = 0` on `(0, a)` between hard walls.
    pub fn infinite_well(width: f64, units: PhysicalUnits) -> Result<Self> {
        Self::new(
            |_| 0.0,
            TurningPoint::Fixed(0.0),
            TurningPoint::Fixed(width),
            0.5 * width,
            (Matching::Wall, Matching::Wall),
            units,
        )
    }

    /// Radial motion in a disk of radius `R`: `V = m²ħ²/2μr²` on `(0, R)`,
    /// with a smooth centrifugal turning point and a wall at `R`.
    pub fn centrifugal(m: u32, radius: f64, units: PhysicalUnits) -> Result<Self> {
        let c = (m as f64 * units.hbar).powi(2) / (2.0 * units.mu);
        let left = if m == 0 {
            TurningPoint::Fixed(0.0)
        } else {
            TurningPoint::Solve(radius * 1e-12)
        };
        Self::new(
            move |r| c / (r * r),
            left,
            TurningPoint::Fixed(radius),
            radius,
            (Matching::Smooth, Matching::Wall),
            units,
        )
    }

    /// Same potential moved right by `shift`.
    pub fn translated(&self, shift: f64) -> Self {
        let v = self.v.clone();
        let mv = |t: TurningPoint| match t {
            TurningPoint::Fixed(x) => TurningPoint::Fixed(x + shift),
            TurningPoint::Solve(x) => TurningPoint::Solve(x + shift),
        };
        Self {
            v: Arc::new(move |x| v(x - shift)),
            left: mv(self.left),
            right: mv(self.right),
            bottom: self.bottom + shift,
            ..self.clone()
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        (self.v)(x)
    }

    /// `C_L + C_R`.
    pub fn matching_sum(&self) -> f64 {
        self.c_left.value() + self.c_right.value()
    }

    /// Classical turning points `(a, b)` at energy `e`.
    pub fn turning_points(&self, e: f64) -> Result<(f64, f64)> {
        if !e.is_finite() {
            return Err(Error::InvalidEnergy(format!("{e}")));
        }
        if self.value(self.bottom) >= e {
            return Err(Error::UnboundEnergy(e));
        }
        let solve = |t: TurningPoint| -> Result<f64> {
            match t {
                TurningPoint::Fixed(x) => Ok(x),
                TurningPoint::Solve(limit) => {
                    if self.value(limit) <= e {
                        return Err(Error::UnboundEnergy(e));
                    }
                    // expand outward from the minimum so the bracket is
                    // within a factor of two of the turning point
                    let span = limit - self.bottom;
                    let mut d = span.signum() * 1e-3 * self.bottom.abs().max(1.0).min(span.abs());
                    let mut inner = self.bottom;
                    let outer = loop {
                        if d.abs() >= span.abs() {
                            break limit;
                        }
                        let x = self.bottom + d;
                        if self.value(x) > e {
                            break x;
                        }
                        inner = x;
                        d *= 2.0;
                    };
                    let (lo, hi) = if outer < inner { (outer, inner) } else { (inner, outer) };
                    brent(|x| self.value(x) - e, lo, hi, TURNING_XTOL)
                }
            }
        };
        Ok((solve(self.left)?, solve(self.right)?))
    }

    /// `∫_a^b g(E - V(x)) dx` with the endpoint substitution.
    fn allowed_integral<G: Fn(f64) -> f64>(&self, e: f64, g: G) -> Result<f64> {
        let (a, b) = self.turning_points(e)?;
        let c = 0.5 * (a + b);
        let s_max = (c - a).sqrt();
        let rule = GaussLegendreRule::new(RULE_ORDER);
        let mut total = 0.0;
        for (s, w) in rule.composite(0.0, s_max, RULE_PANELS) {
            let s2 = s * s;
            let left = (e - self.value(a + s2)).max(0.0);
            let right = (e - self.value(b - s2)).max(0.0);
            total += w * 2.0 * s * (g(left) + g(right));
        }
        if !total.is_finite() {
            return Err(Error::NonFinite(format!("allowed-region integral at E = {e}")));
        }
        Ok(total)
    }

    /// `∫_a^b √(E - V) dx`.
    pub fn action(&self, e: f64) -> Result<f64> {
        self.allowed_integral(e, f64::sqrt)
    }
}

/// `τ = 2√(μ/2) ∫_a^b dx/√(E - V)`.
pub fn classical_period(potential: &Potential1D, e: f64) -> Result<f64> {
    let half = potential.allowed_integral(e, |k| 1.0 / k.sqrt())?;
    Ok(2.0 * (potential.units.mu / 2.0).sqrt() * half)
}

/// Energies with `√(2μ) ∫√(E_n - V) = (n + C_L + C_R)πħ` for `n = 0..=n_max`.
pub fn wkb_energies(potential: &Potential1D, n_max: u32) -> Result<Vec<f64>> {
    let units = potential.units;
    let scale = PI * units.hbar / (2.0 * units.mu).sqrt();
    let floor = potential.value(potential.bottom);
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut lo = floor;
    for n in 0..=n_max {
        let target = (n as f64 + potential.matching_sum()) * scale;
        let residual = |e: f64| -> Result<f64> {
            if e <= floor {
                return Ok(-target);
            }
            Ok(potential.action(e)? - target)
        };
        let mut step = (lo - floor).abs().max(floor.abs()).max(1.0);
        let mut hi = lo + step;
        let mut doublings = 0;
        while residual(hi)? < 0.0 {
            lo = hi;
            step *= 2.0;
            hi = lo + step;
            doublings += 1;
            if doublings > 2000 {
                return Err(Error::Solver(format!("no energy bracket for level {n}")));
            }
        }
        if residual(lo)? > 0.0 {
            return Err(Error::Solver(format!(
                "action is not monotone in energy near level {n}"
            )));
        }
        let mut err = None;
        let e = brent(
            |e| match residual(e) {
                Ok(r) => r,
                Err(x) => {
                    err.get_or_insert(x);
                    0.0
                }
            },
            lo,
            hi,
            ENERGY_RTOL * hi.abs().max(1.0),
        )?;
        if let Some(x) = err {
            return Err(x);
        }
        if let Some(&prev) = out.last() {
            if e <= prev {
                return Err(Error::Solver(format!(
                    "level {n} at {e} does not exceed level {} at {prev}",
                    n - 1
                )));
            }
        }
        out.push(e);
        lo = e;
    }
    Ok(out)
}

/// `2πħ/|dE/dn|` from the central difference at `n0`.
pub fn period_from_spectrum(energies: &[f64], n0: usize, hbar: f64) -> Result<f64> {
    if n0 == 0 || n0 + 1 >= energies.len() {
        return Err(Error::BoundaryIndex {
            index: n0,
            len: energies.len(),
        });
    }
    let d = 0.5 * (energies[n0 + 1] - energies[n0 - 1]);
    if d == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(2.0 * PI * hbar / d.abs())
}
