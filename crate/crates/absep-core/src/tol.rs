//! Numerical tolerances shared by every module.
//!
//! Error messages report the bound that was violated, so the names here are
//! the vocabulary of the crate's diagnostics.

/// Largest supported matrix dimension.
pub const MAX_DIM: usize = 64;

/// Allowed `max |M − M†|` for a matrix to count as Hermitian.
pub const HERMITICITY: f64 = 1e-12;

/// Allowed `|Tr ρ − 1|` for a density matrix.
pub const TRACE: f64 = 1e-12;

/// Most negative eigenvalue still accepted as positive semidefinite.
pub const PSD_SLACK: f64 = 1e-10;

/// Required eigendecomposition accuracy, `max |VΛV† − M|`.
pub const RECONSTRUCTION: f64 = 1e-10;

/// Eigenvalues at or below this count as zero for rank purposes.
pub const RANK_ZERO: f64 = 1e-10;

/// Eigenvalues of a state below this are round-off of an exact zero and
/// are reported as zero. The criterion takes a square root of the smallest
/// eigenvalue, which would otherwise turn `1e-16` noise into `1e-8`.
pub const SPECTRAL_FLOOR: f64 = 1e-14;

/// Allowed `|Σλ − 1|` for a spectrum.
pub const SPECTRUM_SUM: f64 = 1e-10;

/// `|criterion| ≤ BOUNDARY_BAND` counts as the boundary of the absolutely
/// separable set. One order above the eigensolver accuracy.
pub const BOUNDARY_BAND: f64 = 1e-9;

/// Slack on the maximal-ball purity bound.
pub const BALL_SLACK: f64 = 1e-12;

/// A partial transpose with minimum eigenvalue below `−NPT` is NPT.
pub const NPT: f64 = 1e-12;

/// Equal-weight tolerance for certifying rank-`(2d−1)` extreme points.
pub const EXTREME_EQUALITY: f64 = 1e-9;

/// Allowed `max |Σ K†K − I|` for a Kraus set.
pub const KRAUS_COMPLETENESS: f64 = 1e-12;

/// Allowed `max |U†U − I|` for a unitary.
pub const UNITARITY: f64 = 1e-10;

/// Allowed deviation from orthonormality for a user-supplied frame.
pub const ORTHONORMALITY: f64 = 1e-10;

/// Weights closer than this are considered equal.
pub const EQUAL_WEIGHTS: f64 = 1e-12;
