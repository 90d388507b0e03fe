//! Geometry-agnostic wave packet machinery.
//!
//! Packets are the free Gaussians `ψ_G(x) = (b√π)^{-1/2} exp(-(x-x0)²/2b²)
//! exp(i p0 (x-x0)/ħ)` (and their products in 2D). Geometry modules expand
//! them into an [`Expansion`]; everything downstream (time scales,
//! autocorrelation, densities, peaks) only sees spectral lines and
//! coefficients.

mod autocorr;
mod expansion;
mod packet;
mod peaks;
mod timescales;

pub use autocorr::{
    autocorrelation, evolve_density, evolve_density_on, evolve_wavefunction, AutocorrelationSeries,
    Basis,
};
pub use expansion::{Expansion, Geometry, Parity, SpectralLine, StateLabel, Term};
pub use packet::{
    angular_momentum_moments, packet_moments_1d, AngularMomentum, GaussianPacket1D,
    GaussianPacket2D, Moments1D, PhysicalUnits,
};
pub use peaks::{detect_peaks, Peak, DEFAULT_PEAK_THRESHOLD};
pub use timescales::{spreading_time, time_scales, uniform_times, TimeScales, SAMPLES_PER_PERIOD};
