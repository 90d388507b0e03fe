use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Bessel order {order} is outside the supported range 0..={max}")]
    UnsupportedOrder { order: u32, max: u32 },

    #[error("failed to isolate a root in [{lo}, {hi}]: {reason}")]
    RootIsolation { lo: f64, hi: f64, reason: String },

    #[error("non-finite value encountered in {0}")]
    NonFinite(String),

    #[error("expansion has no terms")]
    EmptyExpansion,

    #[error("basis for {basis} cannot evaluate a {expansion} expansion")]
    BasisMismatch { basis: String, expansion: String },

    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumber(String),

    #[error("quadrature did not reach target {target:e} (achieved estimate {achieved:e})")]
    Accuracy { achieved: f64, target: f64 },

    #[error("fold unsupported: {0}")]
    FoldUnsupported(String),

    #[error("point ({0}) lies outside the billiard")]
    OutsideDomain(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("invalid energy: {0}")]
    InvalidEnergy(String),

    #[error("no bound motion at energy {0}")]
    UnboundEnergy(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {index} has no neighbours in a spectrum of length {len}")]
    BoundaryIndex { index: usize, len: usize },

    #[error("solver failure: {0}")]
    Solver(String),
}
