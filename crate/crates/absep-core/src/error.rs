use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix dimension {0} exceeds the supported maximum of {max}", max = crate::tol::MAX_DIM)]
    TooLarge(usize),

    #[error("entry count {found} does not match {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, found: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("matrix is not Hermitian: max |M - M^dagger| = {asymmetry:e} exceeds {tol:e}")]
    NotHermitian { asymmetry: f64, tol: f64 },

    #[error("trace is {trace}, deviation from 1 exceeds {tol:e}")]
    BadTrace { trace: f64, tol: f64 },

    #[error("not positive semidefinite: minimum eigenvalue {min_eig:e} is below -{tol:e}")]
    NotPositive { min_eig: f64, tol: f64 },

    #[error("spectrum sums to {sum}, deviation from 1 exceeds {tol:e}")]
    BadSpectrumSum { sum: f64, tol: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("parameter `{name}` = {value} is outside {domain}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },

    #[error("matrix is not unitary: max |U^dagger U - I| = {deviation:e} exceeds {tol:e}")]
    NotUnitary { deviation: f64, tol: f64 },

    #[error("Kraus set is incomplete: max |sum K^dagger K - I| = {deviation:e} exceeds {tol:e}")]
    Incomplete { deviation: f64, tol: f64 },

    #[error("frame is not orthonormal: max deviation {deviation:e} exceeds {tol:e}")]
    NotOrthonormal { deviation: f64, tol: f64 },

    #[error("precondition violated: {0}")]
    Precondition(&'static str),

    #[error("no sign change of the criterion on the scan grid")]
    NoSignChange,
}

impl Error {
    /// True for failures of the numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoConvergence { .. } | Error::NoSignChange)
    }
}
