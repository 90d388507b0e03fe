use std::f64::consts::PI;

use super::packet::PhysicalUnits;

/// Default time-grid density: samples per shortest classical period.
pub const SAMPLES_PER_PERIOD: usize = 2000;

/// Classical, revival and superrevival times from a spectrum `E(n)`.
///
/// Entries are `f64::INFINITY` when the corresponding derivative vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeScales {
    /// `2πħ/|∂E/∂n_i|` per axis.
    pub t_classical: Vec<f64>,
    /// Symmetric matrix: `2πħ/(|∂²E/∂n_i²|/2)` on the diagonal and
    /// `2πħ/|∂²E/∂n_i∂n_j|` off it.
    pub t_revival: Vec<Vec<f64>>,
    /// `2πħ/(|∂³E/∂n_i³|/6)` per axis.
    pub t_super: Vec<f64>,
    /// Free spreading time `t0`, when a packet was supplied.
    pub t_spread: Option<f64>,
}

impl TimeScales {
    pub fn classical(&self, axis: usize) -> f64 {
        self.t_classical[axis]
    }

    pub fn revival(&self, axis: usize) -> f64 {
        self.t_revival[axis][axis]
    }

    pub fn cross_revival(&self, i: usize, j: usize) -> f64 {
        self.t_revival[i][j]
    }

    pub fn superrevival(&self, axis: usize) -> f64 {
        self.t_super[axis]
    }

    /// Shortest finite classical period, if any.
    pub fn shortest_classical(&self) -> Option<f64> {
        self.t_classical
            .iter()
            .copied()
            .filter(|t| t.is_finite())
            .min_by(f64::total_cmp)
    }

    pub fn with_spread(mut self, t0: f64) -> Self {
        self.t_spread = Some(t0);
        self
    }
}

/// A finite difference is treated as zero below this fraction of the
/// energies it was formed from, so roundoff in large `E` does not produce
/// spurious finite times.
fn is_zero(d: f64, scale: f64) -> bool {
    d.abs() < (1e-14f64).max(64.0 * f64::EPSILON * scale)
}

fn period(hbar: f64, d: f64, scale: f64) -> f64 {
    if is_zero(d, scale) {
        f64::INFINITY
    } else {
        2.0 * PI * hbar / d.abs()
    }
}

/// Central unit-step differences of `energy` about the integer point `center`.
pub fn time_scales<F>(energy: F, center: &[i64], units: &PhysicalUnits) -> TimeScales
where
    F: Fn(&[i64]) -> f64,
{
    let dim = center.len();
    let hbar = units.hbar;
    let at = |shift: &[(usize, i64)]| {
        let mut n = center.to_vec();
        for &(axis, s) in shift {
            n[axis] += s;
        }
        energy(&n)
    };
    let e0 = energy(center);

    let mut t_classical = Vec::with_capacity(dim);
    let mut t_super = Vec::with_capacity(dim);
    let mut t_revival = vec![vec![f64::INFINITY; dim]; dim];
    for i in 0..dim {
        let ep = at(&[(i, 1)]);
        let em = at(&[(i, -1)]);
        let ep2 = at(&[(i, 2)]);
        let em2 = at(&[(i, -2)]);
        let scale = [e0, ep, em, ep2, em2].iter().fold(0.0f64, |s, e| s.max(e.abs()));

        let d1 = (ep - em) / 2.0;
        let d2 = ep - 2.0 * e0 + em;
        let d3 = (ep2 - 2.0 * ep + 2.0 * em - em2) / 2.0;
        t_classical.push(period(hbar, d1, scale));
        t_revival[i][i] = period(hbar, d2 / 2.0, scale);
        t_super.push(period(hbar, d3 / 6.0, scale));

        for j in 0..i {
            let epp = at(&[(i, 1), (j, 1)]);
            let epm = at(&[(i, 1), (j, -1)]);
            let emp = at(&[(i, -1), (j, 1)]);
            let emm = at(&[(i, -1), (j, -1)]);
            let s = [epp, epm, emp, emm].iter().fold(scale, |s, e| s.max(e.abs()));
            let dij = (epp - epm - emp + emm) / 4.0;
            let t = period(hbar, dij, s);
            t_revival[i][j] = t;
            t_revival[j][i] = t;
        }
    }
    TimeScales {
        t_classical,
        t_revival,
        t_super,
        t_spread: None,
    }
}

/// `t0 = μ b²/ħ = 2μΔx0²/ħ`.
pub fn spreading_time(b: f64, units: &PhysicalUnits) -> f64 {
    units.mu * b * b / units.hbar
}

/// `count` evenly spaced times on `[t_start, t_end]`.
pub fn uniform_times(t_start: f64, t_end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![t_start],
        _ => {
            let h = (t_end - t_start) / (count - 1) as f64;
            (0..count).map(|i| t_start + h * i as f64).collect()
        }
    }
}
