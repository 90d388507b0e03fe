use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Which billiard a spectral line belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Geometry {
    Well1D,
    Rectangle,
    /// 45-45-90 triangle, the square folded along `y = x`.
    Isosceles,
    Triangle,
    /// 30-60-90 triangle, the equilateral triangle folded along `x = 0`.
    HalfTriangle,
    Circle,
    HalfCircle,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Geometry::Well1D => "well1d",
            Geometry::Rectangle => "rect",
            Geometry::Isosceles => "isoceles45",
            Geometry::Triangle => "triangle",
            Geometry::HalfTriangle => "tri306090",
            Geometry::Circle => "circle",
            Geometry::HalfCircle => "halfcircle",
        };
        f.write_str(s)
    }
}

/// Symmetry class of a degenerate partner: odd, even, or the single
/// non-degenerate state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Minus,
    Plus,
    Zero,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Minus => "-",
            Parity::Plus => "+",
            Parity::Zero => "0",
        })
    }
}

/// Quantum numbers of one eigenstate, tagged by geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateLabel {
    Well { n: u32 },
    Rect { nx: u32, ny: u32 },
    Isosceles { n: u32, m: u32 },
    Triangle { m: u32, n: u32, parity: Parity },
    HalfTriangle { m: u32, n: u32 },
    Circle { m: i32, n_r: u32 },
    HalfCircle { m: u32, n_r: u32 },
}

impl StateLabel {
    pub fn geometry(&self) -> Geometry {
        match self {
            StateLabel::Well { .. } => Geometry::Well1D,
            StateLabel::Rect { .. } => Geometry::Rectangle,
            StateLabel::Isosceles { .. } => Geometry::Isosceles,
            StateLabel::Triangle { .. } => Geometry::Triangle,
            StateLabel::HalfTriangle { .. } => Geometry::HalfTriangle,
            StateLabel::Circle { .. } => Geometry::Circle,
            StateLabel::HalfCircle { .. } => Geometry::HalfCircle,
        }
    }

    /// Quantum numbers as a flat integer list (parity excluded).
    pub fn quantum_numbers(&self) -> Vec<i64> {
        match *self {
            StateLabel::Well { n } => vec![n as i64],
            StateLabel::Rect { nx, ny } => vec![nx as i64, ny as i64],
            StateLabel::Isosceles { n, m } => vec![n as i64, m as i64],
            StateLabel::Triangle { m, n, .. } | StateLabel::HalfTriangle { m, n } => {
                vec![m as i64, n as i64]
            }
            StateLabel::Circle { m, n_r } => vec![m as i64, n_r as i64],
            StateLabel::HalfCircle { m, n_r } => vec![m as i64, n_r as i64],
        }
    }

    /// Symmetry tag, where the geometry has one.
    pub fn parity(&self) -> Option<Parity> {
        match *self {
            StateLabel::Triangle { parity, .. } => Some(parity),
            StateLabel::Isosceles { .. } | StateLabel::HalfTriangle { .. } => Some(Parity::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            StateLabel::Well { n } => write!(f, "n={n}"),
            StateLabel::Rect { nx, ny } => write!(f, "nx={nx} ny={ny}"),
            StateLabel::Isosceles { n, m } => write!(f, "n={n} m={m} (-)"),
            StateLabel::Triangle { m, n, parity } => write!(f, "m={m} n={n} ({parity})"),
            StateLabel::HalfTriangle { m, n } => write!(f, "m={m} n={n} (-)"),
            StateLabel::Circle { m, n_r } => write!(f, "m={m} nr={n_r}"),
            StateLabel::HalfCircle { m, n_r } => write!(f, "m={m} nr={n_r}"),
        }
    }
}

/// One eigenstate: its labels and energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralLine {
    pub label: StateLabel,
    pub energy: f64,
}

impl SpectralLine {
    pub fn new(label: StateLabel, energy: f64) -> Self {
        Self { label, energy }
    }

    pub fn geometry(&self) -> Geometry {
        self.label.geometry()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub line: SpectralLine,
    pub coeff: Complex64,
}

/// Truncated eigenstate expansion of a packet, `ψ ≈ Σ a_j u_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    terms: Vec<Term>,
    captured_probability: f64,
    hbar: f64,
    warnings: Vec<String>,
}

/// Slack allowed on `Σ|a|² <= 1` for quadrature-derived coefficients.
pub const CAPTURE_SLACK: f64 = 1e-9;

impl Expansion {
    pub fn new(terms: Vec<Term>, hbar: f64) -> Result<Self> {
        let captured_probability: f64 = terms.iter().map(|t| t.coeff.norm_sqr()).sum();
        if !captured_probability.is_finite() {
            return Err(Error::NonFinite("expansion coefficients".into()));
        }
        if captured_probability > 1.0 + CAPTURE_SLACK {
            return Err(Error::InvariantViolation(format!(
                "captured probability {captured_probability} exceeds one"
            )));
        }
        if let Some(first) = terms.first() {
            let g = first.line.geometry();
            if let Some(t) = terms.iter().find(|t| t.line.geometry() != g) {
                return Err(Error::InvariantViolation(format!(
                    "mixed geometries in one expansion ({g} and {})",
                    t.line.geometry()
                )));
            }
        }
        Ok(Self {
            terms,
            captured_probability,
            hbar,
            warnings: Vec::new(),
        })
    }

    pub(crate) fn push_warning(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    pub(crate) fn with_warnings(mut self, warnings: Vec<String>) -> Self {
        self.warnings.extend(warnings);
        self
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ|a|²`.
    pub fn captured_probability(&self) -> f64 {
        self.captured_probability
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Non-fatal notes, e.g. a packet placed close to a wall.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn geometry(&self) -> Option<Geometry> {
        self.terms.first().map(|t| t.line.geometry())
    }

    /// `Σ|a|² f(line)`.
    pub fn weighted_sum<F: Fn(&SpectralLine) -> f64>(&self, f: F) -> f64 {
        self.terms.iter().map(|t| t.coeff.norm_sqr() * f(&t.line)).sum()
    }

    /// `Σ|a|² E`.
    pub fn mean_energy(&self) -> f64 {
        self.weighted_sum(|l| l.energy)
    }

    pub fn coefficient(&self, label: &StateLabel) -> Option<Complex64> {
        self.terms.iter().find(|t| &t.line.label == label).map(|t| t.coeff)
    }

    /// Terms sorted by descending probability.
    pub fn by_probability(&self) -> Vec<Term> {
        let mut v = self.terms.clone();
        v.sort_by(|a, b| b.coeff.norm_sqr().total_cmp(&a.coeff.norm_sqr()));
        v
    }

    /// Smallest set of states (in descending probability) whose cumulative
    /// probability reaches `fraction` of the captured total.
    pub fn probability_region(&self, fraction: f64) -> Vec<Term> {
        let target = fraction * self.captured_probability;
        let mut acc = 0.0;
        let mut out = Vec::new();
        for t in self.by_probability() {
            if acc >= target {
                break;
            }
            acc += t.coeff.norm_sqr();
            out.push(t);
        }
        out
    }
}
