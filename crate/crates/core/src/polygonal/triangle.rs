use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::special::{gaussian_trig_overlap, TrigKind};
use crate::wavepacket::{
    Basis, Expansion, GaussianPacket2D, Geometry, Parity, PhysicalUnits, SpectralLine,
    StateLabel, Term,
};
use crate::well1d::WALL_MARGIN_SPREADS;

/// Plane-wave components more than this many `1/b` from the packet
/// wavevector carry probability below `e^{-36}` and are skipped.
const WINDOW_RADIUS: f64 = 6.0;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Equilateral-triangle eigenstate label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TriangleState {
    pub m: u32,
    pub n: u32,
    pub parity: Parity,
}

impl TriangleState {
    pub fn new(m: u32, n: u32, parity: Parity) -> Result<Self> {
        let ok = n >= 1
            && match parity {
                Parity::Zero => m == 2 * n,
                Parity::Minus | Parity::Plus => m > 2 * n,
            };
        if ok {
            Ok(Self { m, n, parity })
        } else {
            Err(Error::InvalidQuantumNumber(format!(
                "triangle state (m={m}, n={n}) cannot carry parity {parity}"
            )))
        }
    }

    /// All parity partners of `(m, n)`.
    pub fn partners(m: u32, n: u32) -> Vec<Self> {
        if n == 0 || m < 2 * n {
            Vec::new()
        } else if m == 2 * n {
            vec![Self { m, n, parity: Parity::Zero }]
        } else {
            vec![
                Self { m, n, parity: Parity::Minus },
                Self { m, n, parity: Parity::Plus },
            ]
        }
    }

    pub fn label(&self) -> StateLabel {
        StateLabel::Triangle {
            m: self.m,
            n: self.n,
            parity: self.parity,
        }
    }
}

/// One separable product `sign · trig(Kx) · sin(Qy)`.
#[derive(Debug, Clone, Copy)]
struct Component {
    sign: f64,
    kind: TrigKind,
    k: f64,
    q: f64,
}

impl Component {
    fn eval(&self, x: f64, y: f64) -> f64 {
        let fx = match self.kind {
            TrigKind::Sin => (self.k * x).sin(),
            TrigKind::Cos => (self.k * x).cos(),
        };
        self.sign * fx * (self.q * y).sin()
    }
}

/// Equilateral triangle with vertices `(0,0)`, `(±a/2, √3a/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleBilliard {
    pub side: f64,
    pub units: PhysicalUnits,
}

impl TriangleBilliard {
    pub fn new(side: f64, units: PhysicalUnits) -> Result<Self> {
        if !(side > 0.0 && side.is_finite()) {
            return Err(Error::InvalidParameter(format!("side must be positive, got {side}")));
        }
        Ok(Self { side, units })
    }

    pub fn standard(units: PhysicalUnits) -> Self {
        Self {
            side: units.size,
            units,
        }
    }

    pub fn height(&self) -> f64 {
        SQRT3 * self.side / 2.0
    }

    fn scale(&self) -> f64 {
        let u = &self.units;
        u.hbar * u.hbar / (2.0 * u.mu * self.side * self.side) * (4.0 * PI / 3.0).powi(2)
    }

    /// `(ħ²/2μa²)(4π/3)²(m² + n² − mn)`.
    pub fn energy(&self, m: u32, n: u32) -> Result<f64> {
        if n < 1 || m < 2 * n {
            return Err(Error::InvalidQuantumNumber(format!(
                "triangle levels need m >= 2n >= 2, got (m={m}, n={n})"
            )));
        }
        Ok(self.level(m, n))
    }

    fn level(&self, m: u32, n: u32) -> f64 {
        let (m, n) = (m as f64, n as f64);
        self.scale() * (m * m + n * n - m * n)
    }

    /// `9μa²/4πħ`, common to all levels.
    pub fn revival_time(&self) -> f64 {
        9.0 * self.units.mu * self.side * self.side / (4.0 * PI * self.units.hbar)
    }

    /// `(T_rev/(2m−n), T_rev/|2n−m|)`; the second is infinite at `m = 2n`.
    pub fn classical_periods(&self, m: u32, n: u32) -> (f64, f64) {
        let t = self.revival_time();
        let (m, n) = (m as f64, n as f64);
        let dn = (2.0 * n - m).abs();
        (t / (2.0 * m - n), if dn == 0.0 { f64::INFINITY } else { t / dn })
    }

    /// `2a/v0`.
    pub fn tau(&self, p0: f64) -> f64 {
        2.0 * self.side / self.units.speed(p0)
    }

    pub fn line(&self, state: &TriangleState) -> SpectralLine {
        SpectralLine::new(state.label(), self.level(state.m, state.n))
    }

    fn components(&self, state: &TriangleState) -> (f64, [Component; 3]) {
        let a = self.side;
        let (m, n) = (state.m as f64, state.n as f64);
        let kx = |v: f64| 2.0 * PI * v / (3.0 * a);
        let qy = |v: f64| 2.0 * PI * v / (SQRT3 * a);
        let wave = [
            (kx(2.0 * m - n), qy(n)),
            (kx(2.0 * n - m), qy(m)),
            (kx(m + n), qy(m - n)),
        ];
        let n16 = (16.0 / (3.0 * SQRT3 * a * a)).sqrt();
        let (norm, kind, signs) = match state.parity {
            Parity::Minus => (n16, TrigKind::Sin, [1.0, -1.0, -1.0]),
            Parity::Plus => (n16, TrigKind::Cos, [1.0, -1.0, 1.0]),
            // w⁰ = w⁺/√2 at m = 2n
            Parity::Zero => (n16 / 2f64.sqrt(), TrigKind::Cos, [1.0, -1.0, 1.0]),
        };
        let c = |i: usize| Component {
            sign: signs[i],
            kind,
            k: wave[i].0,
            q: wave[i].1,
        };
        (norm, [c(0), c(1), c(2)])
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        y < self.height() && y > SQRT3 * x.abs()
    }

    /// Normalized `w⁻`, `w⁺` or `w⁰`; 0 outside the closed triangle.
    pub fn eigenfunction(&self, state: &TriangleState, x: f64, y: f64) -> f64 {
        if y > self.height() || y < SQRT3 * x.abs() {
            return 0.0;
        }
        let (norm, comps) = self.components(state);
        norm * comps.iter().map(|c| c.eval(x, y)).sum::<f64>()
    }

    /// Smallest point-to-edge distance of the packet center.
    pub fn margin(&self, packet: &GaussianPacket2D) -> f64 {
        let (x, y) = (packet.x0, packet.y0);
        (self.height() - y)
            .min((y - SQRT3 * x) / 2.0)
            .min((y + SQRT3 * x) / 2.0)
    }

    fn states_where<F: Fn(&TriangleState) -> bool>(&self, k_max: f64, keep: F) -> Vec<TriangleState> {
        let unit = 4.0 * PI / (3.0 * self.side);
        let reach = (k_max / unit).powi(2) * (1.0 + 1e-12);
        let mut out = Vec::new();
        let mut n = 1u32;
        // m² − mn + n² is smallest at m = 2n, where it equals 3n²
        while 3.0 * (n as f64).powi(2) <= reach {
            let mut m = 2 * n;
            loop {
                let (mf, nf) = (m as f64, n as f64);
                if mf * mf - mf * nf + nf * nf > reach {
                    break;
                }
                for s in TriangleState::partners(m, n) {
                    if keep(&s) {
                        out.push(s);
                    }
                }
                m += 1;
            }
            n += 1;
        }
        out
    }

    /// Every state with `E <= e_max`.
    pub fn states_below(&self, e_max: f64) -> Vec<TriangleState> {
        let k_max = (2.0 * self.units.mu * e_max.max(0.0)).sqrt() / self.units.hbar;
        self.states_where(k_max, |s| self.level(s.m, s.n) <= e_max)
    }

    /// States with a plane-wave component `(±K_i, ±Q_i)` within
    /// `WINDOW_RADIUS/b` of the packet wavevector.
    pub fn default_states(&self, packet: &GaussianPacket2D) -> Vec<TriangleState> {
        let hbar = self.units.hbar;
        let (k0x, k0y) = (packet.p0x / hbar, packet.p0y / hbar);
        let radius = WINDOW_RADIUS / packet.b;
        let k_max = k0x.hypot(k0y) + radius;
        self.states_where(k_max, |s| {
            let (_, comps) = self.components(s);
            comps.iter().any(|c| {
                [(c.k, c.q), (-c.k, c.q), (c.k, -c.q), (-c.k, -c.q)]
                    .iter()
                    .any(|&(kx, ky)| (kx - k0x).hypot(ky - k0y) <= radius)
            })
        })
    }

    /// Overlap with the packet, each product term integrated over the plane.
    pub fn coefficient(&self, packet: &GaussianPacket2D, state: &TriangleState) -> Complex64 {
        let hbar = self.units.hbar;
        let b = packet.b;
        let gauss_norm = 1.0 / (b * PI.sqrt());
        let (norm, comps) = self.components(state);
        let sum: Complex64 = comps
            .iter()
            .map(|c| {
                let ix = gaussian_trig_overlap(c.kind, c.k, packet.x0, packet.p0x, b, hbar);
                let iy = gaussian_trig_overlap(TrigKind::Sin, c.q, packet.y0, packet.p0y, b, hbar);
                c.sign * ix * iy
            })
            .sum();
        sum * norm * gauss_norm
    }

    pub fn coefficients(
        &self,
        packet: &GaussianPacket2D,
        states: &[TriangleState],
    ) -> Result<Expansion> {
        let terms: Vec<Term> = states
            .par_iter()
            .map(|s| Term {
                line: self.line(s),
                coeff: self.coefficient(packet, s),
            })
            .collect();
        let mut exp = Expansion::new(terms, self.units.hbar)?;
        let margin = self.margin(packet);
        if margin < WALL_MARGIN_SPREADS * packet.spread() {
            exp.push_warning(format!(
                "packet center is {margin:.4} from an edge, under {WALL_MARGIN_SPREADS} spreads"
            ));
        }
        Ok(exp)
    }

    pub fn expand(&self, packet: &GaussianPacket2D) -> Result<Expansion> {
        self.coefficients(packet, &self.default_states(packet))
    }

    /// Fold along the bisector `x = 0`, keeping the `x > 0` half.
    pub fn fold_306090(&self) -> HalfTriangleBilliard {
        HalfTriangleBilliard { parent: *self }
    }
}

impl Basis for TriangleBilliard {
    fn geometry(&self) -> Geometry {
        Geometry::Triangle
    }

    fn eigenfunction(&self, line: &SpectralLine, point: &[f64]) -> Result<Complex64> {
        match line.label {
            StateLabel::Triangle { m, n, parity } => {
                let s = TriangleState::new(m, n, parity)?;
                Ok(Complex64::new(
                    TriangleBilliard::eigenfunction(self, &s, point[0], point[1]),
                    0.0,
                ))
            }
            other => Err(Error::BasisMismatch {
                basis: Geometry::Triangle.to_string(),
                expansion: other.geometry().to_string(),
            }),
        }
    }
}

/// The 30-60-90 half `x > 0` with states `√2·w⁻(m, n)`, `m > 2n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfTriangleBilliard {
    parent: TriangleBilliard,
}

impl HalfTriangleBilliard {
    pub fn parent(&self) -> &TriangleBilliard {
        &self.parent
    }

    pub fn energy(&self, m: u32, n: u32) -> Result<f64> {
        if n < 1 || m <= 2 * n {
            return Err(Error::InvalidQuantumNumber(format!(
                "half-triangle levels need m > 2n >= 2, got (m={m}, n={n})"
            )));
        }
        self.parent.energy(m, n)
    }

    pub fn revival_time(&self) -> f64 {
        self.parent.revival_time()
    }

    fn full(m: u32, n: u32) -> TriangleState {
        TriangleState {
            m,
            n,
            parity: Parity::Minus,
        }
    }

    pub fn line(&self, m: u32, n: u32) -> SpectralLine {
        SpectralLine::new(StateLabel::HalfTriangle { m, n }, self.parent.level(m, n))
    }

    pub fn eigenfunction(&self, m: u32, n: u32, x: f64, y: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        2f64.sqrt() * self.parent.eigenfunction(&Self::full(m, n), x, y)
    }

    pub fn margin(&self, packet: &GaussianPacket2D) -> f64 {
        self.parent.margin(packet).min(packet.x0)
    }

    /// `(m, n)` pairs of the parent window that survive the fold.
    pub fn default_states(&self, packet: &GaussianPacket2D) -> Vec<(u32, u32)> {
        self.parent
            .default_states(packet)
            .into_iter()
            .filter(|s| s.parity == Parity::Minus)
            .map(|s| (s.m, s.n))
            .collect()
    }

    pub fn coefficients(&self, packet: &GaussianPacket2D, states: &[(u32, u32)]) -> Result<Expansion> {
        let terms: Vec<Term> = states
            .par_iter()
            .map(|&(m, n)| Term {
                line: self.line(m, n),
                coeff: 2f64.sqrt() * self.parent.coefficient(packet, &Self::full(m, n)),
            })
            .collect();
        let mut exp = Expansion::new(terms, self.parent.units.hbar)?;
        let margin = self.margin(packet);
        if margin < WALL_MARGIN_SPREADS * packet.spread() {
            exp.push_warning(format!(
                "packet center is {margin:.4} from an edge, under {WALL_MARGIN_SPREADS} spreads"
            ));
        }
        Ok(exp)
    }

    pub fn expand(&self, packet: &GaussianPacket2D) -> Result<Expansion> {
        self.coefficients(packet, &self.default_states(packet))
    }
}

impl Basis for HalfTriangleBilliard {
    fn geometry(&self) -> Geometry {
        Geometry::HalfTriangle
    }

    fn eigenfunction(&self, line: &SpectralLine, point: &[f64]) -> Result<Complex64> {
        match line.label {
            StateLabel::HalfTriangle { m, n } => Ok(Complex64::new(
                HalfTriangleBilliard::eigenfunction(self, m, n, point[0], point[1]),
                0.0,
            )),
            other => Err(Error::BasisMismatch {
                basis: Geometry::HalfTriangle.to_string(),
                expansion: other.geometry().to_string(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavepacket::autocorrelation;

    fn tri() -> TriangleBilliard {
        TriangleBilliard::standard(PhysicalUnits::default())
    }

    #[test]
    fn spectrum() {
        let t = tri();
        let e = t.energy(2, 1).unwrap();
        assert!((e - (4.0 * PI / 3.0).powi(2) * 3.0).abs() < 1e-12);
        assert!(t.energy(3, 2).is_err());
        assert!((t.revival_time() - 9.0 / (8.0 * PI)).abs() < 1e-15);
        let (tm, tn) = t.classical_periods(5, 1);
        assert!((tm - t.revival_time() / 9.0).abs() < 1e-15);
        assert!((tn - t.revival_time() / 3.0).abs() < 1e-15);
        assert!(t.classical_periods(4, 2).1.is_infinite());
    }

    #[test]
    fn state_rules() {
        assert!(TriangleState::new(4, 2, Parity::Zero).is_ok());
        assert!(TriangleState::new(4, 2, Parity::Plus).is_err());
        assert!(TriangleState::new(5, 2, Parity::Zero).is_err());
        assert!(TriangleState::new(3, 2, Parity::Minus).is_err());
        assert_eq!(TriangleState::partners(5, 2).len(), 2);
    }

    #[test]
    fn plus_is_root_two_zero_on_diagonal_family() {
        let t = tri();
        for n in 1..4 {
            let zero = TriangleState::new(2 * n, n, Parity::Zero).unwrap();
            let plus = TriangleState { m: 2 * n, n, parity: Parity::Plus };
            let minus = TriangleState { m: 2 * n, n, parity: Parity::Minus };
            for &(x, y) in &[(0.1, 0.5), (-0.2, 0.6), (0.05, 0.3)] {
                let w0 = t.eigenfunction(&zero, x, y);
                let explicit = (8.0 / (3.0 * SQRT3)).sqrt()
                    * (2.0 * (2.0 * PI * n as f64 * x).cos() * (2.0 * PI * n as f64 * y / SQRT3).sin()
                        - (4.0 * PI * n as f64 * y / SQRT3).sin());
                assert!((w0 - explicit).abs() < 1e-12);
                assert!((t.eigenfunction(&plus, x, y) - 2f64.sqrt() * w0).abs() < 1e-12);
                assert!(t.eigenfunction(&minus, x, y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn window_covers_states_below() {
        let t = tri();
        let all = t.states_below(t.energy(12, 3).unwrap());
        assert!(all.contains(&TriangleState::new(12, 3, Parity::Plus).unwrap()));
        assert!(all.iter().all(|s| t.level(s.m, s.n) <= t.energy(12, 3).unwrap()));
    }

    #[test]
    fn centered_packet_captures_everything() {
        let t = tri();
        let p = GaussianPacket2D::with_spread(0.0, SQRT3 / 3.0, 0.0, 0.0, 0.02).unwrap();
        let states = t.states_below(50.0 * p.mean_energy(&t.units));
        let e = t.coefficients(&p, &states).unwrap();
        assert!(e.captured_probability() >= 1.0 - 1e-6, "{}", e.captured_probability());
        for term in e.terms() {
            if term.line.label.parity() == Some(Parity::Minus) {
                assert!(term.coeff.norm() < 1e-12);
            }
        }
        let d = t.expand(&p).unwrap();
        assert!((d.captured_probability() - e.captured_probability()).abs() < 1e-9);
    }

    #[test]
    fn moving_packet_energy_and_revival() {
        let t = tri();
        let p = GaussianPacket2D::launched(0.05, 0.5, 80.0, 1.2, 0.04).unwrap();
        let e = t.expand(&p).unwrap();
        assert!(e.warnings().is_empty());
        let expect = p.mean_energy(&t.units);
        assert!((e.mean_energy() - expect).abs() < 1e-3 * expect);
        let total = e.captured_probability();
        let a = autocorrelation(&e, &[t.revival_time()]).unwrap();
        assert!((a.magnitudes_sq[0] - total * total).abs() < 1e-10);
    }

    #[test]
    fn half_triangle() {
        let h = tri().fold_306090();
        assert!(h.energy(4, 2).is_err());
        assert_eq!(h.revival_time(), tri().revival_time());
        for i in 0..50 {
            let y = 0.1 + 0.7 * i as f64 / 50.0;
            assert!(h.eigenfunction(7, 2, 0.0, y).abs() < 1e-12);
        }
        let p = GaussianPacket2D::launched(0.2, 0.6, 60.0, 0.4, 0.02).unwrap();
        let e = h.expand(&p).unwrap();
        assert!(e.warnings().is_empty(), "{:?}", e.warnings());
        assert!(e.captured_probability() > 1.0 - 1e-8, "{}", e.captured_probability());
    }
}
