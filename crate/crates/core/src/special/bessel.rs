//! Bessel functions of the first kind, integer order.
//!
//! Small arguments (`z² < 2(m+1)`) use the ascending power series, whose
//! terms then decrease monotonically. Everything else goes through Miller's
//! backward recurrence normalized with `J_0 + 2 Σ J_2k = 1`, which is stable
//! for every order and argument and yields all lower orders in one sweep.

use crate::error::{Error, Result};

/// Largest supported order.
pub const MAX_ORDER: u32 = 200;

const RESCALE_AT: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

/// `J_m(z)` for `0 <= m <= 200` and finite `z >= 0`.
pub fn bessel_j(m: u32, z: f64) -> Result<f64> {
    check_order(m)?;
    check_argument(z)?;
    Ok(jn(m, z))
}

/// `[J_0(z), J_1(z), ..., J_{m_max}(z)]` from a single recurrence sweep.
pub fn bessel_j_orders(m_max: u32, z: f64) -> Result<Vec<f64>> {
    check_order(m_max)?;
    check_argument(z)?;
    let m_max = m_max as usize;
    if z == 0.0 {
        let mut out = vec![0.0; m_max + 1];
        out[0] = 1.0;
        return Ok(out);
    }
    Ok(miller_all(m_max, z))
}

fn check_order(m: u32) -> Result<()> {
    if m > MAX_ORDER {
        Err(Error::UnsupportedOrder {
            order: m,
            max: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

fn check_argument(z: f64) -> Result<()> {
    if !z.is_finite() || z < 0.0 {
        Err(Error::InvalidParameter(format!(
            "Bessel argument must be finite and nonnegative, got {z}"
        )))
    } else {
        Ok(())
    }
}

/// Unchecked evaluation; callers guarantee `m <= MAX_ORDER` and `z >= 0`.
pub(crate) fn jn(m: u32, z: f64) -> f64 {
    if z == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    if z * z < 2.0 * (m as f64 + 1.0) {
        series(m, z)
    } else {
        miller_single(m as usize, z)
    }
}

fn series(m: u32, z: f64) -> f64 {
    let half = 0.5 * z;
    let mut lead = 1.0;
    for k in 1..=m {
        lead *= half / k as f64;
    }
    if lead == 0.0 {
        return 0.0;
    }
    let q = -half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= q / (k as f64 * (k as f64 + m as f64));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// Starting order for the backward sweep; well past the turning point
/// `n = z` so the dominant solution has died out by the orders we keep.
fn start_order(m: usize, z: f64) -> usize {
    let top = (m as f64).max(z);
    let n = top.ceil() as usize + 20 + (60.0 * top).sqrt() as usize;
    n + (n & 1)
}

fn miller_single(m: usize, z: f64) -> f64 {
    let n_start = start_order(m, z);
    let two_over_z = 2.0 / z;
    let mut above = 0.0; // J_{k+1}
    let mut here = 1e-30; // J_k
    let mut norm = 0.0;
    let mut picked = if m == n_start { here } else { 0.0 };
    for k in (1..=n_start).rev() {
        let below = k as f64 * two_over_z * here - above;
        above = here;
        here = below;
        if here.abs() > RESCALE_AT {
            here *= RESCALE_BY;
            above *= RESCALE_BY;
            norm *= RESCALE_BY;
            picked *= RESCALE_BY;
        }
        let order = k - 1;
        if order == m {
            picked = here;
        }
        if order > 0 && order % 2 == 0 {
            norm += 2.0 * here;
        }
    }
    norm += here;
    picked / norm
}

fn miller_all(m_max: usize, z: f64) -> Vec<f64> {
    let n_start = start_order(m_max, z);
    let two_over_z = 2.0 / z;
    let mut out = vec![0.0; m_max + 1];
    let mut above = 0.0;
    let mut here = 1e-30;
    let mut norm = 0.0;
    if n_start <= m_max {
        out[n_start] = here;
    }
    for k in (1..=n_start).rev() {
        let below = k as f64 * two_over_z * here - above;
        above = here;
        here = below;
        let order = k - 1;
        if here.abs() > RESCALE_AT {
            here *= RESCALE_BY;
            above *= RESCALE_BY;
            norm *= RESCALE_BY;
            for v in out.iter_mut().skip(order + 1) {
                *v *= RESCALE_BY;
            }
        }
        if order <= m_max {
            out[order] = here;
        }
        if order > 0 && order % 2 == 0 {
            norm += 2.0 * here;
        }
    }
    norm += here;
    for v in &mut out {
        *v /= norm;
    }
    out
}
