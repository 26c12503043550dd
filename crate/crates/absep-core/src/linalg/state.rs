use alloc::vec::Vec;

use super::{eig_hermitian, eigvals_hermitian, ComplexMatrix, HermitianEigen};
use crate::tol::{HERMITICITY, MAX_DIM, PSD_SLACK, RANK_ZERO, SPECTRAL_FLOOR, SPECTRUM_SUM, TRACE};
use crate::{Error, Result};

/// Eigenvalues of a state, sorted in decreasing order and summing to one.
///
/// Entries within [`SPECTRUM_SUM`] below zero are accepted and clamped to
/// zero.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts, validates and clamps `values`.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter {
                name: "spectrum",
                reason: "empty",
            });
        }
        let mut sum = 0.0;
        for &v in &values {
            if !v.is_finite() {
                return Err(Error::NonFinite);
            }
            if v < -SPECTRUM_SUM {
                return Err(Error::NotPositive {
                    min_eig: v,
                    tol: SPECTRUM_SUM,
                });
            }
            sum += v;
        }
        if (sum - 1.0).abs() > SPECTRUM_SUM {
            return Err(Error::BadSpectrumSum {
                sum,
                tol: SPECTRUM_SUM,
            });
        }
        values.sort_by(|a, b| b.total_cmp(a));
        values.iter_mut().for_each(|v| *v = v.max(0.0));
        Ok(Self { values })
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of eigenvalues above [`RANK_ZERO`].
    pub fn rank(&self) -> usize {
        self.values.iter().filter(|&&v| v > RANK_ZERO).count()
    }

    /// `Σ λᵢ²`.
    pub fn purity(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    pub fn is_maximally_mixed(&self, tol: f64) -> bool {
        let n = self.values.len() as f64;
        self.values.iter().all(|v| (v - 1.0 / n).abs() <= tol)
    }

    /// Entrywise `x·self + (1−x)·other` of two spectra taken in a shared
    /// eigenbasis. The result is re-sorted.
    pub fn mix_aligned(&self, other: &Spectrum, x: f64) -> Result<Spectrum> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::OutOfRange {
                name: "x",
                value: x,
                domain: "[0, 1]",
            });
        }
        Spectrum::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| x * a + (1.0 - x) * b)
                .collect(),
        )
    }
}

/// A density matrix on `2 ⊗ d`: Hermitian, unit trace, positive
/// semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    d: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates `matrix` as a state on `2 ⊗ d`.
    pub fn new(matrix: ComplexMatrix, d: usize) -> Result<Self> {
        check_dims(&matrix, d)?;
        validate_state_matrix(&matrix)?;
        Ok(Self { d, matrix })
    }

    /// Trusted constructor for internally produced states. Only the
    /// Hermitian part of `matrix` is kept.
    pub(crate) fn from_trusted(matrix: ComplexMatrix, d: usize) -> Self {
        debug_assert!(check_dims(&matrix, d).is_ok());
        debug_assert!(matrix.hermitian_defect() < 1e-9);
        Self {
            d,
            matrix: matrix.hermitian_part(),
        }
    }

    /// `I / 2d`.
    pub fn maximally_mixed(d: usize) -> Result<Self> {
        let n = 2 * d;
        let m = ComplexMatrix::identity(n).scale(1.0 / n as f64);
        check_dims(&m, d)?;
        Ok(Self { d, matrix: m })
    }

    /// Local dimension of subsystem B.
    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    /// Total dimension `2d`.
    #[inline]
    pub fn dim(&self) -> usize {
        2 * self.d
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn eigen(&self) -> Result<HermitianEigen> {
        eig_hermitian(&self.matrix)
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        let vals = eigvals_hermitian(&self.matrix)?;
        let sum: f64 = vals.iter().sum();
        // Renormalise away round-off in the trace.
        Spectrum::new(
            vals.into_iter()
                .map(|v| if v.abs() <= SPECTRAL_FLOOR { 0.0 } else { v / sum })
                .collect(),
        )
    }

    /// `Tr ρ²`, computed from the entries.
    pub fn purity(&self) -> f64 {
        self.matrix.frobenius_sq()
    }

    /// `x·self + (1−x)·other`.
    pub fn mix(&self, other: &DensityMatrix, x: f64) -> Result<DensityMatrix> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: other.d,
            });
        }
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::OutOfRange {
                name: "weight",
                value: x,
                domain: "[0, 1]",
            });
        }
        let m = &self.matrix.scale(x) + &other.matrix.scale(1.0 - x);
        Ok(Self::from_trusted(m, self.d))
    }

    /// `U ρ U†` for a unitary on the full space.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        if !u.is_square() || u.rows() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.rows(),
            });
        }
        Ok(Self::from_trusted(self.matrix.conjugate_by(u), self.d))
    }
}

fn check_dims(m: &ComplexMatrix, d: usize) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if d < 2 {
        return Err(Error::OutOfRange {
            name: "d",
            value: d as f64,
            domain: "d >= 2",
        });
    }
    if 2 * d > MAX_DIM {
        return Err(Error::TooLarge(2 * d));
    }
    if m.rows() != 2 * d {
        return Err(Error::DimensionMismatch {
            expected: 2 * d,
            found: m.rows(),
        });
    }
    Ok(())
}

/// Checks the three state properties (Hermitian, unit trace, PSD) of a
/// square matrix of any size.
pub fn validate_state_matrix(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let asymmetry = m.hermitian_defect();
    if !(asymmetry <= HERMITICITY) {
        return Err(Error::NotHermitian {
            asymmetry,
            tol: HERMITICITY,
        });
    }
    let trace = m.trace().re;
    if !((trace - 1.0).abs() <= TRACE) {
        return Err(Error::BadTrace { trace, tol: TRACE });
    }
    let vals = eigvals_hermitian(m)?;
    let min_eig = *vals.last().expect("non-empty");
    if min_eig < -PSD_SLACK {
        return Err(Error::NotPositive {
            min_eig,
            tol: PSD_SLACK,
        });
    }
    Ok(())
}
