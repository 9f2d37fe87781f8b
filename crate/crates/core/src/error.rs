use thiserror::Error;

/// Errors raised by the laboratory's numerical operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("total dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("state is not normalized (squared norm {norm_sq})")]
    NotNormalized { norm_sq: f64 },
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("density matrix has trace {trace}, expected 1")]
    TraceNotOne { trace: f64 },
    #[error("matrix has negative eigenvalue {eigenvalue:e}")]
    NegativeEigenvalue { eigenvalue: f64 },
    #[error("operator is not a projector (deviation {deviation:e})")]
    NotProjector { deviation: f64 },
    #[error("operator is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("subsystem sets overlap on `{0}`")]
    OverlappingSubsystems(String),
    #[error("outcome has zero probability ({probability:e}); the branch is impossible")]
    ImpossibleOutcome { probability: f64 },
    #[error("measurement events are not time-ordered")]
    UnorderedEvents,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("matrix is not positive definite (eigenvalue {eigenvalue:e})")]
    NotPositiveDefinite { eigenvalue: f64 },
    #[error("reduced spectrum has non-positive eigenvalues beyond tolerance: {spectrum:?}")]
    BadSpectrum { spectrum: Vec<f64> },
    #[error("did not converge: {0}")]
    NotConverged(String),
    #[error("mass squared {m2l2} lies below the Breitenlohner-Freedman bound {bound}")]
    BelowBfBound { m2l2: f64, bound: f64 },
    #[error("probability leaked to the grid edge ({edge_probability:e})")]
    BoundaryLeak { edge_probability: f64 },
    #[error("trajectory {index} left the grid at x = {position}")]
    TrajectoryEscaped { index: usize, position: f64 },
    #[error("Fock truncation too small: tail weight {tail:e}")]
    Truncation { tail: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
