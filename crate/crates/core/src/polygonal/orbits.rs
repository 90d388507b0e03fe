use std::f64::consts::{FRAC_PI_4, PI};

/// How an orbit is launched.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Launch {
    /// Direction in radians. Square orbits measure it from the x axis,
    /// triangle orbits from the bisector.
    Angle(f64),
    /// Circular orbits: distance of closest approach over `R`.
    ClosestApproach(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitKind {
    Standard,
    /// The isolated 45-45-90 orbit along the altitude to the hypotenuse.
    Altitude,
    /// Circular `p → ∞` limit hugging the wall; `p` is stored as 0.
    WhisperingGallery,
}

/// A closed classical orbit and its recurrences.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedOrbit {
    pub p: u32,
    pub q: u32,
    /// Path length in units of the billiard size (`a` or `R`).
    pub length: f64,
    /// Period over the reference time `τ` of the geometry.
    pub period_over_tau: f64,
    /// `k · period_over_tau` for every `k` within the enumeration bound.
    pub recurrences: Vec<f64>,
    pub launch: Launch,
    pub kind: OrbitKind,
}

impl ClosedOrbit {
    pub(crate) fn new(
        p: u32,
        q: u32,
        length: f64,
        period_over_tau: f64,
        launch: Launch,
        kind: OrbitKind,
    ) -> Self {
        Self {
            p,
            q,
            length,
            period_over_tau,
            recurrences: Vec::new(),
            launch,
            kind,
        }
    }

    /// Fill `recurrences` with multiples up to `bound`, inclusive or not.
    pub(crate) fn with_recurrences(mut self, bound: f64, inclusive: bool) -> Self {
        let step = self.period_over_tau;
        let fits = |t: f64| {
            if inclusive {
                t <= bound * (1.0 + 1e-12)
            } else {
                t < bound * (1.0 - 1e-12)
            }
        };
        let mut k = 1.0;
        while fits(k * step) {
            self.recurrences.push(k * step);
            k += 1.0;
        }
        self
    }

    /// Launch angle in degrees, if the orbit is launched by direction.
    pub fn angle_degrees(&self) -> Option<f64> {
        match self.launch {
            Launch::Angle(t) => Some(t.to_degrees()),
            Launch::ClosestApproach(_) => None,
        }
    }
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Square orbits with `τ = 2a/v0`: `L = 2a√(p²+q²)`, `θ = atan(q/p)`.
///
/// Only `p >= q` is listed; `(q, p)` is the mirror image about the diagonal.
pub fn square_closed_orbits(max_period_over_tau: f64) -> Vec<ClosedOrbit> {
    let mut out = Vec::new();
    let pmax = max_period_over_tau.max(0.0).floor() as u32;
    for p in 1..=pmax {
        for q in 0..=p {
            if gcd(p, q) != 1 {
                continue;
            }
            let s = ((p * p + q * q) as f64).sqrt();
            if s > max_period_over_tau * (1.0 + 1e-12) {
                continue;
            }
            let theta = (q as f64).atan2(p as f64);
            out.push(ClosedOrbit::new(
                p,
                q,
                2.0 * s,
                s,
                Launch::Angle(theta),
                OrbitKind::Standard,
            )
            .with_recurrences(max_period_over_tau, true));
        }
    }
    out.sort_by(|a, b| a.angle_degrees().partial_cmp(&b.angle_degrees()).unwrap());
    out
}

/// Square orbits plus the isolated 135° orbit of the half-square, whose
/// period is half that of `(1, 1)`.
pub fn isosceles_closed_orbits(max_period_over_tau: f64) -> Vec<ClosedOrbit> {
    let mut out = square_closed_orbits(max_period_over_tau);
    let s = 2f64.sqrt();
    if s / 2.0 <= max_period_over_tau {
        out.push(ClosedOrbit::new(
            1,
            1,
            s,
            s / 2.0,
            Launch::Angle(PI - FRAC_PI_4),
            OrbitKind::Altitude,
        )
        .with_recurrences(max_period_over_tau, true));
    }
    out
}

/// Triangle orbits `L = √3a·√(p²+pq+q²)` with `τ = 2a/v0`.
///
/// The launch angle is measured from the bisector. `(1, 0)` runs along the
/// bisector; `(0, 1)` is its mirror and is not listed separately.
pub fn triangle_closed_orbits(max_length_over_a: f64) -> Vec<ClosedOrbit> {
    let mut out = Vec::new();
    let r3 = 3f64.sqrt();
    let pmax = (max_length_over_a / r3).max(0.0).floor() as u32;
    for p in 1..=pmax {
        for q in 0..=p {
            if gcd(p, q) != 1 {
                continue;
            }
            let len = r3 * ((p * p + p * q + q * q) as f64).sqrt();
            if len > max_length_over_a * (1.0 + 1e-12) {
                continue;
            }
            let angle = (q as f64 * r3 / 2.0).atan2(p as f64 + q as f64 / 2.0);
            out.push(ClosedOrbit::new(
                p,
                q,
                len,
                len / 2.0,
                Launch::Angle(angle),
                OrbitKind::Standard,
            )
            .with_recurrences(max_length_over_a / 2.0, true));
        }
    }
    out.sort_by(|a, b| a.length.partial_cmp(&b.length).unwrap());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(orbits: &[ClosedOrbit], p: u32, q: u32) -> &ClosedOrbit {
        orbits.iter().find(|o| o.p == p && o.q == q).unwrap()
    }

    #[test]
    fn table_rows() {
        let o = square_closed_orbits(10.0);
        assert_eq!(o.len(), 25);
        let r = find(&o, 1, 0);
        assert_eq!(r.recurrences.len(), 10);
        assert_eq!(r.angle_degrees(), Some(0.0));
        let r = find(&o, 2, 1);
        assert!((r.angle_degrees().unwrap() - 26.57).abs() < 5e-3);
        let two_dp: Vec<String> = r.recurrences.iter().map(|t| format!("{t:.2}")).collect();
        assert_eq!(two_dp, ["2.24", "4.47", "6.71", "8.94"]);
        let r = find(&o, 4, 3);
        assert_eq!(r.recurrences, vec![5.0, 10.0]);
        let r = find(&o, 1, 1);
        assert!((r.period_over_tau - 1.41).abs() < 5e-3);
    }

    #[test]
    fn altitude_orbit() {
        let o = isosceles_closed_orbits(3.0);
        let alt = o.iter().find(|o| o.kind == OrbitKind::Altitude).unwrap();
        let diag = find(&o, 1, 1);
        assert!((2.0 * alt.period_over_tau - diag.period_over_tau).abs() < 1e-15);
        assert!((alt.angle_degrees().unwrap() - 135.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_lengths() {
        let o = triangle_closed_orbits(10.0);
        assert!((find(&o, 1, 0).length - 3f64.sqrt()).abs() < 1e-14);
        assert!((find(&o, 1, 1).length - 3.0).abs() < 1e-14);
        assert!((find(&o, 2, 1).length - 21f64.sqrt()).abs() < 1e-14);
        assert!((find(&o, 1, 1).angle_degrees().unwrap() - 30.0).abs() < 1e-12);
        for orbit in &o {
            assert!(orbit.length <= 10.0);
            assert!((orbit.period_over_tau * 2.0 - orbit.length).abs() < 1e-14);
        }
    }
}
