use thiserror::Error;

/// Errors raised by the Lie-algebraic layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("invalid simple type {family}{rank}: {constraint}")]
    InvalidType {
        family: char,
        rank: usize,
        constraint: &'static str,
    },
    #[error("unknown family label {0:?}; expected one of A, B, C, D, E, F, G")]
    UnknownFamily(String),
    #[error("algebra mismatch: element belongs to {found}, expected {expected}")]
    AlgebraMismatch { expected: String, found: String },
    #[error("representation {rep} is not supported for type {algebra}")]
    UnsupportedRepresentation { rep: String, algebra: String },
    #[error("unknown representation label {0:?}; expected adjoint or defining")]
    UnknownRepresentation(String),
    #[error("dimension mismatch: {what} has length {found}, expected {expected}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
}

/// Errors raised by the phase-space, dynamics, Lax and r-matrix layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GcsError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("singular configuration: |sinh({what})| = {value:e} is below the floor {floor:e}")]
    Singular {
        what: String,
        value: f64,
        floor: f64,
    },
    #[error("spectral parameter {x} is at or too close to a pole of the Lax operator")]
    Pole { x: f64 },
    #[error("generator is not in the compact subalgebra (residual {residual:e})")]
    NonCompactGenerator { residual: f64 },
    #[error("adaptive integrator rejected {rejections} consecutive steps at t = {t}")]
    StepRejection { t: f64, rejections: usize },
    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = GcsError> = std::result::Result<T, E>;
