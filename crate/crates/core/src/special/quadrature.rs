//! Fixed-order Gauss-Legendre rules and the composite helpers built on them.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendreRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendreRule {
    /// Rule exact for polynomials of degree `2 order - 1`. Panics on zero.
    pub fn new(order: usize) -> Self {
        let order = NonZeroUsize::new(order).expect("quadrature order must be positive");
        let rule = GaussLegendre::new(order);
        let (nodes, weights) = rule.as_node_weight_pairs().iter().copied().unzip();
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    /// Nodes and weights of the composite rule with `panels` equal panels.
    pub fn composite(&self, a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
        let panels = panels.max(1);
        let h = (b - a) / panels as f64;
        let mut out = Vec::with_capacity(panels * self.order());
        for i in 0..panels {
            let lo = a + h * i as f64;
            out.extend(self.mapped(lo, lo + h));
        }
        out
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }

    pub fn integrate_composite<F: FnMut(f64) -> f64>(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        mut f: F,
    ) -> f64 {
        self.composite(a, b, panels)
            .into_iter()
            .map(|(x, w)| w * f(x))
            .sum()
    }
}

/// Order of the per-panel rule used by [`integrate_oscillatory`].
const OSC_ORDER: usize = 20;
const OSC_MAX_DOUBLINGS: u32 = 6;

/// `∫_a^b f(x) dx` for a complex, possibly oscillatory integrand.
///
/// Starts from equal panels no wider than `panel_width` and doubles the
/// panel count until two successive estimates agree to `tol`
/// (absolute). Returns the finer estimate.
pub fn integrate_oscillatory<F>(a: f64, b: f64, panel_width: f64, tol: f64, f: F) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if b <= a {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let rule = GaussLegendreRule::new(OSC_ORDER);
    let sum = |panels: usize| -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in rule.composite(a, b, panels) {
            let v = f(x);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::NonFinite(format!("integrand at x = {x}")));
            }
            acc += v * w;
        }
        Ok(acc)
    };
    let mut panels = ((b - a) / panel_width).ceil().max(1.0) as usize;
    let mut coarse = sum(panels)?;
    let mut diff = f64::INFINITY;
    for _ in 0..OSC_MAX_DOUBLINGS {
        panels *= 2;
        let fine = sum(panels)?;
        diff = (fine - coarse).norm();
        if diff <= tol {
            return Ok(fine);
        }
        coarse = fine;
    }
    Err(Error::Accuracy {
        achieved: diff,
        target: tol,
    })
}

/// `∫_0^R f(r) dr` with a fixed Gauss-Legendre rule of the given order.
///
/// Doubling the order shows geometric convergence for analytic `f`; the
/// Bessel-type radial integrands used here converge once the order exceeds
/// the number of oscillations on `(0, R)` by a few tens.
pub fn quad_radial<F: FnMut(f64) -> f64>(mut f: F, r_max: f64, order: usize) -> Result<f64> {
    if order < 8 {
        return Err(Error::InvalidParameter(format!(
            "radial quadrature order must be at least 8, got {order}"
        )));
    }
    if !(r_max > 0.0 && r_max.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "radial extent must be positive, got {r_max}"
        )));
    }
    let rule = GaussLegendreRule::new(order);
    let mut acc = 0.0;
    for (r, w) in rule.mapped(0.0, r_max) {
        let v = f(r);
        if !v.is_finite() {
            return Err(Error::NonFinite(format!("radial integrand at r = {r}")));
        }
        acc += w * v;
    }
    Ok(acc)
}
