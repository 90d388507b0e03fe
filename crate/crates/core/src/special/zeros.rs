//! Positive zeros of `J_m`.
//!
//! Zeros are isolated by a sign-change scan that starts below the first zero
//! (`j_{m,1} > m`) and steps by less than the smallest gap between
//! consecutive zeros, so the `n_r`-th sign change is always the `n_r`-th
//! zero. Each bracket is then refined with Brent's method.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rayon::prelude::*;

use super::bessel::{jn, MAX_ORDER};
use super::roots::brent;
use crate::error::{Error, Result};

/// Gaps between consecutive zeros exceed 3.1 for every order.
const SCAN_STEP: f64 = 1.0;
const ZERO_XTOL: f64 = 1e-15;

/// Large-argument estimate `(n_r + m/2 + 3/4) π`.
pub fn asymptotic_zero_seed(m: u32, n_r: u32) -> f64 {
    (n_r as f64 + 0.5 * m as f64 + 0.75) * PI
}

fn scan_start(m: u32) -> f64 {
    if m == 0 {
        1.0
    } else {
        m as f64
    }
}

fn check_order(m: u32) -> Result<()> {
    if m > MAX_ORDER {
        return Err(Error::UnsupportedOrder {
            order: m,
            max: MAX_ORDER,
        });
    }
    Ok(())
}

/// Walks the sign changes of `J_m` upward, handing each refined zero to
/// `keep` until it returns `false`.
fn walk_zeros<F>(m: u32, mut keep: F) -> Result<()>
where
    F: FnMut(f64) -> bool,
{
    let mut lo = scan_start(m);
    let mut f_lo = jn(m, lo);
    loop {
        let hi = lo + SCAN_STEP;
        let f_hi = jn(m, hi);
        if f_lo == 0.0 {
            if !keep(lo) {
                return Ok(());
            }
        } else if f_lo.signum() != f_hi.signum() && f_hi != 0.0 {
            let z = brent(|x| jn(m, x), lo, hi, ZERO_XTOL)?;
            if !keep(z) {
                return Ok(());
            }
        }
        lo = hi;
        f_lo = f_hi;
        if lo > 1e6 {
            return Err(Error::RootIsolation {
                lo: scan_start(m),
                hi: lo,
                reason: format!("zero scan of order {m} ran away"),
            });
        }
    }
}

/// The `n_r`-th positive zero of `J_m` (`n_r = 0` is the first).
pub fn bessel_zero(m: u32, n_r: u32) -> Result<f64> {
    check_order(m)?;
    let mut found = None;
    let mut count = 0u32;
    walk_zeros(m, |z| {
        if count == n_r {
            found = Some(z);
            return false;
        }
        count += 1;
        true
    })?;
    found.ok_or_else(|| Error::RootIsolation {
        lo: scan_start(m),
        hi: f64::INFINITY,
        reason: "scan ended early".into(),
    })
}

/// All zeros of `J_m` strictly below `z_max`, ascending.
pub fn zeros_below(m: u32, z_max: f64) -> Result<Vec<f64>> {
    check_order(m)?;
    let mut out = Vec::new();
    if z_max <= scan_start(m) {
        return Ok(out);
    }
    walk_zeros(m, |z| {
        if z < z_max {
            out.push(z);
            true
        } else {
            false
        }
    })?;
    Ok(out)
}

/// First `count` zeros of `J_m`.
fn first_zeros(m: u32, count: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    walk_zeros(m, |z| {
        out.push(z);
        out.len() < count
    })?;
    Ok(out)
}

/// Immutable table of zeros `z(m, n_r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselZeroTable {
    entries: BTreeMap<(u32, u32), f64>,
}

impl BesselZeroTable {
    /// Every zero with `m <= m_max` and `n_r <= nr_max`.
    pub fn build(m_max: u32, nr_max: u32) -> Result<Self> {
        check_order(m_max)?;
        let rows: Vec<(u32, Vec<f64>)> = (0..=m_max)
            .into_par_iter()
            .map(|m| first_zeros(m, nr_max as usize + 1).map(|z| (m, z)))
            .collect::<Result<_>>()?;
        Ok(Self::from_rows(rows))
    }

    /// Every zero below `z_max` for orders `m <= m_max`.
    pub fn below(m_max: u32, z_max: f64) -> Result<Self> {
        check_order(m_max)?;
        let rows: Vec<(u32, Vec<f64>)> = (0..=m_max)
            .into_par_iter()
            .map(|m| zeros_below(m, z_max).map(|z| (m, z)))
            .collect::<Result<_>>()?;
        Ok(Self::from_rows(rows))
    }

    fn from_rows(rows: Vec<(u32, Vec<f64>)>) -> Self {
        let mut entries = BTreeMap::new();
        for (m, zs) in rows {
            for (n_r, z) in zs.into_iter().enumerate() {
                entries.insert((m, n_r as u32), z);
            }
        }
        Self { entries }
    }

    pub fn get(&self, m: u32, n_r: u32) -> Option<f64> {
        self.entries.get(&(m, n_r)).copied()
    }

    /// Zeros of one order, ascending in `n_r`.
    pub fn order(&self, m: u32) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.entries
            .range((m, 0)..=(m, u32::MAX))
            .map(|(&(_, n_r), &z)| (n_r, z))
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), f64)> + '_ {
        self.entries.iter().map(|(&k, &z)| (k, z))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
