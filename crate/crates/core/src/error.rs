use thiserror::Error;

/// Errors raised by constructors, validators and the numerical kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("capacity exceeded: d = {d} is larger than the limit {max}")]
    Capacity { d: usize, max: usize },

    #[error("orbital space must have at least one orbital")]
    EmptySpace,

    #[error("orbital index {index} out of range 1..={d}")]
    IndexOutOfRange { index: usize, d: usize },

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("rows are not orthonormal (deviation {0:.3e})")]
    NotOrthonormal(f64),

    #[error("state vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("trace deviates from 1 by {0:.3e}")]
    TraceDeviates(f64),

    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("1-pdm eigenvalue {0:.3e} outside [0, 1]")]
    NotContraction(f64),

    #[error("occupation probability {value} at orbital {index} outside {range}")]
    InvalidProbability {
        index: usize,
        value: f64,
        range: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("mixture weights invalid: {0}")]
    WeightMismatch(String),

    #[error("orbital spaces do not match: {0}")]
    SpaceMismatch(String),

    #[error("orbital subset is empty or invalid: {0}")]
    InvalidSubset(String),

    #[error("alpha = {alpha} outside the admissible range {range}")]
    InvalidAlpha { alpha: f64, range: &'static str },

    #[error("reference state is not free (Wick violation {0:.3e})")]
    NotFree(f64),

    #[error("infeasible particle numbers: {0}")]
    InfeasibleParticles(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by invalid input, as opposed to failed
    /// internal consistency checks.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Inconsistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
