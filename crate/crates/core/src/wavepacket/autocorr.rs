use num_complex::Complex64;
use rayon::prelude::*;

use super::expansion::{Expansion, Geometry, SpectralLine};
use crate::error::{Error, Result};

/// Eigenfunction evaluator for one geometry.
pub trait Basis: Sync {
    fn geometry(&self) -> Geometry;

    /// `u(point)` for the state on `line`, with `point` = `[x]` or `[x, y]`.
    fn eigenfunction(&self, line: &SpectralLine, point: &[f64]) -> Result<Complex64>;
}

/// `A(t)` sampled on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AutocorrelationSeries {
    pub times: Vec<f64>,
    pub values: Vec<Complex64>,
    pub magnitudes_sq: Vec<f64>,
}

impl AutocorrelationSeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Largest `|A|²` at or after `t_from`, with its time.
    pub fn max_after(&self, t_from: f64) -> Option<(f64, f64)> {
        self.times
            .iter()
            .zip(&self.magnitudes_sq)
            .filter(|(t, _)| **t >= t_from)
            .map(|(&t, &m)| (t, m))
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// `A(t) = Σ|a|² exp(-iEt/ħ)`.
pub fn autocorrelation(exp: &Expansion, times: &[f64]) -> Result<AutocorrelationSeries> {
    if exp.is_empty() {
        return Err(Error::EmptyExpansion);
    }
    let hbar = exp.hbar();
    let weights: Vec<(f64, f64)> = exp
        .terms()
        .iter()
        .map(|t| (t.coeff.norm_sqr(), t.line.energy / hbar))
        .collect();
    let values: Vec<Complex64> = times
        .par_iter()
        .map(|&t| {
            weights
                .iter()
                .map(|&(w, omega)| Complex64::from_polar(w, -omega * t))
                .sum()
        })
        .collect();
    let magnitudes_sq = values.iter().map(|v| v.norm_sqr()).collect();
    Ok(AutocorrelationSeries {
        times: times.to_vec(),
        values,
        magnitudes_sq,
    })
}

fn check_basis(exp: &Expansion, basis: &dyn Basis) -> Result<()> {
    match exp.geometry() {
        None => Err(Error::EmptyExpansion),
        Some(g) if g != basis.geometry() => Err(Error::BasisMismatch {
            basis: basis.geometry().to_string(),
            expansion: g.to_string(),
        }),
        Some(_) => Ok(()),
    }
}

/// `ψ(point, t) = Σ a u(point) exp(-iEt/ħ)`.
pub fn evolve_wavefunction(
    exp: &Expansion,
    basis: &dyn Basis,
    point: &[f64],
    t: f64,
) -> Result<Complex64> {
    check_basis(exp, basis)?;
    let hbar = exp.hbar();
    let mut psi = Complex64::new(0.0, 0.0);
    for term in exp.terms() {
        let u = basis.eigenfunction(&term.line, point)?;
        psi += term.coeff * u * Complex64::from_polar(1.0, -term.line.energy * t / hbar);
    }
    Ok(psi)
}

/// `|ψ(point, t)|²`.
pub fn evolve_density(exp: &Expansion, basis: &dyn Basis, point: &[f64], t: f64) -> Result<f64> {
    evolve_wavefunction(exp, basis, point, t).map(|psi| psi.norm_sqr())
}

/// `|ψ(point, t)|²` at every point, evaluated in parallel.
pub fn evolve_density_on(
    exp: &Expansion,
    basis: &dyn Basis,
    points: &[Vec<f64>],
    t: f64,
) -> Result<Vec<f64>> {
    check_basis(exp, basis)?;
    points.par_iter().map(|p| evolve_density(exp, basis, p, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavepacket::expansion::{StateLabel, Term};
    use proptest::prelude::*;

    fn expansion(coeffs: &[(f64, f64, f64)]) -> Expansion {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, &(re, im, e))| Term {
                line: SpectralLine::new(StateLabel::Well { n: i as u32 + 1 }, e),
                coeff: Complex64::new(re, im),
            })
            .collect();
        Expansion::new(terms, 1.0).unwrap()
    }

    struct Planes;
    impl Basis for Planes {
        fn geometry(&self) -> Geometry {
            Geometry::Well1D
        }
        fn eigenfunction(&self, line: &SpectralLine, point: &[f64]) -> Result<Complex64> {
            let StateLabel::Well { n } = line.label else {
                unreachable!()
            };
            Ok(Complex64::new((n as f64 * point[0]).sin(), 0.0))
        }
    }

    struct Elsewhere;
    impl Basis for Elsewhere {
        fn geometry(&self) -> Geometry {
            Geometry::Circle
        }
        fn eigenfunction(&self, _: &SpectralLine, _: &[f64]) -> Result<Complex64> {
            Ok(Complex64::new(1.0, 0.0))
        }
    }

    #[test]
    fn value_at_zero_is_captured_probability() {
        let e = expansion(&[(0.3, 0.1, 1.0), (0.2, -0.5, 7.0), (0.1, 0.0, 3.5)]);
        let a = autocorrelation(&e, &[0.0]).unwrap();
        assert!((a.values[0].re - e.captured_probability()).abs() < 1e-15);
        assert_eq!(a.values[0].im, 0.0);
    }

    #[test]
    fn empty_expansion_rejected() {
        let e = Expansion::new(Vec::new(), 1.0).unwrap();
        assert_eq!(autocorrelation(&e, &[0.0]), Err(Error::EmptyExpansion));
    }

    #[test]
    fn single_term_density_is_stationary() {
        let e = expansion(&[(0.0, 0.7, 13.0)]);
        let d0 = evolve_density(&e, &Planes, &[0.4], 0.0).unwrap();
        let d1 = evolve_density(&e, &Planes, &[0.4], 2.7).unwrap();
        assert!((d0 - d1).abs() < 1e-15);
    }

    #[test]
    fn mismatched_basis() {
        let e = expansion(&[(0.5, 0.0, 1.0)]);
        assert!(matches!(
            evolve_density(&e, &Elsewhere, &[0.1], 0.0),
            Err(Error::BasisMismatch { .. })
        ));
    }

    fn arb_expansion() -> impl Strategy<Value = Expansion> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0, 0.0f64..500.0), 1..40).prop_map(|v| {
            let norm: f64 = v.iter().map(|(a, b, _)| a * a + b * b).sum::<f64>().sqrt();
            let scaled: Vec<_> = v
                .iter()
                .map(|&(a, b, e)| (a / norm * 0.999, b / norm * 0.999, e))
                .collect();
            expansion(&scaled)
        })
    }

    proptest! {
        #[test]
        fn bounded_by_captured_probability(e in arb_expansion(), t in 0.0f64..50.0) {
            let times: Vec<f64> = (0..64).map(|k| t + 0.013 * k as f64).collect();
            let a = autocorrelation(&e, &times).unwrap();
            for v in &a.values {
                prop_assert!(v.norm() <= e.captured_probability() * (1.0 + 1e-12));
            }
        }

        #[test]
        fn time_reversal_conjugates(e in arb_expansion(), t in 0.0f64..50.0) {
            let a = autocorrelation(&e, &[t, -t]).unwrap();
            prop_assert!((a.values[0] - a.values[1].conj()).norm() < 1e-12);
        }
    }
}
