use thiserror::Error;

/// Errors shared by all qmkit modules.
#[derive(Debug, Clone, Error)]
pub enum QmError {
    #[error("domain error: {0}")]
    Domain(String),

    /// Photon energy below the work function; carries the threshold frequency
    /// above which electrons are stripped.
    #[error("photon energy below work function (threshold frequency {threshold_hz:.4e} Hz)")]
    BelowThreshold { threshold_hz: f64 },

    #[error("wave functions live on different grids")]
    GridMismatch,

    #[error("cannot normalize a zero wave function")]
    ZeroNorm,

    #[error("invalid quantum numbers: {0}")]
    QuantumNumbers(String),

    #[error("sampling too coarse: {0}")]
    Resolution(String),

    #[error("eigensolver failed: {0}")]
    Solver(String),

    #[error("no propagating channel: {0}")]
    NoChannel(String),

    #[error("energy {energy:.6e} lies in a band gap (|f| = {dispersion:.6e} > 1)")]
    GapEnergy { energy: f64, dispersion: f64 },

    #[error(
        "operators do not satisfy the angular momentum commutation relations (residuals {0:?})"
    )]
    NotAngularMomentum(Vec<f64>),

    #[error("particle number infeasible: {0}")]
    Infeasible(String),

    #[error("negative variance {0:.3e} beyond numerical tolerance")]
    NegativeVariance(f64),
}

pub type Result<T> = std::result::Result<T, QmError>;
