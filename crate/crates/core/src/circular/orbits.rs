use std::f64::consts::PI;

use crate::polygonal::{ClosedOrbit, Launch, OrbitKind};

/// Largest `p` listed per `q` before the whispering-gallery limit row.
pub const DEFAULT_P_MAX: u32 = 13;

/// Closed orbits with `L < max_length_over_r · R`, `p` up to [`DEFAULT_P_MAX`].
pub fn closed_orbits(max_length_over_r: f64) -> Vec<ClosedOrbit> {
    closed_orbits_with(max_length_over_r, DEFAULT_P_MAX)
}

/// Every `(p, q)` with `p >= 2q` (repeated traversals such as `(4, 2)`
/// included), `L/R = 2p sin(πq/p)`, `R_min/R = cos(πq/p)`, `τ = R/v0`.
/// Each `q` whose limit `2πq` fits gets a `p → ∞` row.
pub fn closed_orbits_with(max_length_over_r: f64, p_max: u32) -> Vec<ClosedOrbit> {
    let bound = max_length_over_r;
    let mut out = Vec::new();
    let mut q = 1u32;
    // the shortest orbit of a given q is the diameter family, L = 4q
    while 4.0 * (q as f64) < bound {
        for p in 2 * q..=p_max.max(2 * q) {
            let angle = PI * q as f64 / p as f64;
            let len = 2.0 * p as f64 * angle.sin();
            if len < bound {
                out.push(
                    ClosedOrbit::new(
                        p,
                        q,
                        len,
                        len,
                        Launch::ClosestApproach(angle.cos()),
                        OrbitKind::Standard,
                    )
                    .with_recurrences(bound, false),
                );
            }
        }
        let limit = 2.0 * PI * q as f64;
        if limit < bound {
            out.push(
                ClosedOrbit::new(
                    0,
                    q,
                    limit,
                    limit,
                    Launch::ClosestApproach(1.0),
                    OrbitKind::WhisperingGallery,
                )
                .with_recurrences(bound, false),
            );
        }
        q += 1;
    }
    out
}
