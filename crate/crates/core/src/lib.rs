//! Gaussian wave packets in exactly solvable quantum billiards.
//!
//! The crate builds Gaussian packets inside the 1D infinite well, the
//! rectangular and square billiards, the equilateral triangle and the
//! circular billiard (plus their half-well foldings), expands them in the
//! exact eigenbasis of each geometry, and evolves them unitarily. Classical
//! periodicities, closed orbits and quantum revivals are read off the
//! spectrum and the autocorrelation function `A(t)`.
//!
//! Module map:
//!
//! * [`special`]: Bessel functions and zeros, Gaussian-trigonometric
//!   overlap integrals, Gauss-Legendre quadrature, bracketed root finding.
//! * [`wavepacket`]: packets, expansions, time scales, autocorrelation,
//!   density evolution and peak detection.
//! * [`well1d`]: the 1D infinite well.
//! * [`polygonal`]: square/rectangle, 45-45-90 fold, equilateral triangle,
//!   30-60-90 fold, and closed-orbit tables.
//! * [`circular`]: the circular billiard and the half-disk.
//! * [`wkb`]: generic 1D WKB periods and quantization.
//!
//! Units follow a single [`PhysicalUnits`] record; the conventional choice
//! is `hbar = 2 mu = 1` with unit well size.

/// Library version, echoed in CLI output headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod circular;
pub mod error;
pub mod polygonal;
pub mod special;
pub mod wavepacket;
pub mod well1d;
pub mod wkb;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use wavepacket::{
    autocorrelation, detect_peaks, evolve_density, evolve_density_on, spreading_time, time_scales,
    AutocorrelationSeries, Basis, Expansion, GaussianPacket1D, GaussianPacket2D, Geometry, Parity,
    Peak, PhysicalUnits, SpectralLine, StateLabel, Term, TimeScales,
};
