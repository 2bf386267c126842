use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {op} got {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is not Hermitian (max |h - h^dagger| = {violation:e})")]
    NonHermitian { violation: f64 },

    #[error("trace is {trace} (|Tr - 1| = {violation:e})")]
    TraceNotOne { trace: f64, violation: f64 },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("state is not Bell-diagonal (off-BD component {violation:e})")]
    NotBellDiagonal { violation: f64 },

    #[error("Bell-diagonal coefficients must be finite, got {c:?}")]
    InvalidBdState { c: [f64; 3] },

    #[error("measurement parameter is not a unit vector (|s| = {norm})")]
    NonUnitParam { norm: f64 },

    #[error("time must be nonnegative, got {0}")]
    NegativeTime(f64),

    #[error("decoherence rate must be nonnegative and finite, got {0}")]
    InvalidRate(f64),

    #[error("axis index must be 1, 2 or 3, got {0}")]
    InvalidAxis(u8),

    #[error("theta = {theta} outside [0, {alpha}]")]
    ThetaOutOfRange { theta: f64, alpha: f64 },

    #[error("time grid must be sorted and nonnegative")]
    InvalidTimeGrid,

    #[error("malformed state description: {0}")]
    StateSpec(String),
}

impl Error {
    /// Short name of the violated invariant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NonHermitian { .. } => "NonHermitian",
            Error::TraceNotOne { .. } => "TraceNotOne",
            Error::NotPsd { .. } => "NotPSD",
            Error::NotBellDiagonal { .. } => "NotBellDiagonal",
            Error::InvalidBdState { .. } => "InvalidBDState",
            Error::NonUnitParam { .. } => "NonUnitParam",
            Error::NegativeTime(_) => "NegativeTime",
            Error::InvalidRate(_) => "InvalidRate",
            Error::InvalidAxis(_) => "InvalidAxis",
            Error::ThetaOutOfRange { .. } => "ThetaOutOfRange",
            Error::InvalidTimeGrid => "InvalidTimeGrid",
            Error::StateSpec(_) => "StateSpec",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
