//! Numerical kernels shared by the geometry modules.

pub mod bessel;
pub mod overlap;
pub mod quadrature;
pub mod roots;
pub mod zeros;

pub use bessel::{bessel_j, bessel_j_orders, MAX_ORDER};
pub use overlap::{gaussian_trig_overlap, TrigKind};
pub use quadrature::{integrate_oscillatory, quad_radial, GaussLegendreRule};
pub use roots::brent;
pub use zeros::{asymptotic_zero_seed, bessel_zero, zeros_below, BesselZeroTable};

/// Default absolute tolerance of the special-function kernels.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
