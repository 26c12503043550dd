//! Spectral absolute-separability test and the geometry of the absolutely
//! separable set in `2 ⊗ d`.
//!
//! With eigenvalues `λ₁ ≥ … ≥ λ_{2d}` a state is absolutely separable iff
//!
//! ```text
//! λ₁ − λ_{2d−1} − 2·√(λ_{2d−2}·λ_{2d}) ≤ 0.
//! ```
//!
//! States where the left-hand side vanishes form the boundary of the set;
//! strictly negative values are interior points and decompose as a mixture
//! of `I/2d` and a boundary state.

use libm::sqrt;

use crate::linalg::{DensityMatrix, Spectrum, Subsystem};
use crate::tol::{BALL_SLACK, BOUNDARY_BAND, EQUAL_WEIGHTS, EXTREME_EQUALITY, NPT};
use crate::{Error, Result};

/// Outcome of the partial-transpose test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum EntanglementStatus {
    /// Negative partial transpose, entangled in any dimension.
    NptEntangled,
    /// PPT with `d ≤ 3`, where PPT is equivalent to separability.
    PptSeparableExact,
    /// PPT with `d ≥ 4`; separability is not decided.
    PptUndecided,
}

/// Position relative to the absolutely separable set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum AbsSepClass {
    NotAbsSep,
    AbsBoundary,
    AbsInterior,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ClassificationReport {
    pub dims: (usize, usize),
    pub spectrum: Spectrum,
    pub rank: usize,
    pub eq1_lhs: f64,
    pub purity: f64,
    pub in_maximal_ball: bool,
    pub pt_min_eig: f64,
    pub entanglement_status: EntanglementStatus,
    pub absep_class: AbsSepClass,
    /// Set only for rank-`(2d−1)` states with equal nonzero eigenvalues.
    /// Extremality of full-rank states is never certified.
    pub is_extreme_certified: bool,
}

/// `σ` and `ε` with `λᵢ = (1 − 2d·ε)·σᵢ + ε`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct InteriorDecomposition {
    pub epsilon: f64,
    pub boundary_spectrum: Spectrum,
    /// Weight `2d·ε` of the maximally mixed state.
    pub mixing_weight: f64,
}

fn check_length(s: &Spectrum, d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::OutOfRange {
            name: "d",
            value: d as f64,
            domain: "d >= 2",
        });
    }
    if s.len() != 2 * d {
        return Err(Error::DimensionMismatch {
            expected: 2 * d,
            found: s.len(),
        });
    }
    Ok(())
}

/// `λ₁ − λ_{2d−1} − 2√(λ_{2d−2} λ_{2d})`.
pub fn eq1_lhs(s: &Spectrum, d: usize) -> Result<f64> {
    check_length(s, d)?;
    let l = s.values();
    let n = 2 * d;
    Ok(l[0] - l[n - 2] - 2.0 * sqrt(l[n - 3] * l[n - 1]))
}

pub fn is_absolutely_separable(s: &Spectrum, d: usize) -> Result<bool> {
    Ok(eq1_lhs(s, d)? <= BOUNDARY_BAND)
}

/// Purity radius `1/(2d−1)` of the maximal ball around `I/2d`.
pub fn maximal_ball_purity(d: usize) -> f64 {
    1.0 / (2 * d - 1) as f64
}

pub fn in_maximal_ball(rho: &DensityMatrix) -> bool {
    rho.purity() <= maximal_ball_purity(rho.d()) + BALL_SLACK
}

/// Minimum eigenvalue of `ρ^{T_B}` and the verdict it supports.
pub fn entanglement_status(rho: &DensityMatrix) -> Result<(f64, EntanglementStatus)> {
    let pt = rho.partial_transpose(Subsystem::B);
    let vals = crate::linalg::eigvals_hermitian(&pt)?;
    let min = *vals.last().expect("non-empty");
    let status = if min < -NPT {
        EntanglementStatus::NptEntangled
    } else if rho.d() <= 3 {
        EntanglementStatus::PptSeparableExact
    } else {
        EntanglementStatus::PptUndecided
    };
    Ok((min, status))
}

/// Boundary/interior label from the criterion value.
pub fn absep_class_of(eq1: f64, band: f64) -> AbsSepClass {
    if eq1 < -band {
        AbsSepClass::AbsInterior
    } else if eq1 <= band {
        AbsSepClass::AbsBoundary
    } else {
        AbsSepClass::NotAbsSep
    }
}

fn is_equal_weight_extreme(s: &Spectrum, d: usize) -> bool {
    let target = maximal_ball_purity(d);
    s.rank() == 2 * d - 1
        && s.values()[..2 * d - 1]
            .iter()
            .all(|v| (v - target).abs() <= EXTREME_EQUALITY)
}

pub fn classify(rho: &DensityMatrix) -> Result<ClassificationReport> {
    classify_with_band(rho, BOUNDARY_BAND)
}

/// [`classify`] with a custom boundary band.
pub fn classify_with_band(rho: &DensityMatrix, band: f64) -> Result<ClassificationReport> {
    let d = rho.d();
    let spectrum = rho.spectrum()?;
    let eq1 = eq1_lhs(&spectrum, d)?;
    let (pt_min_eig, entanglement_status) = entanglement_status(rho)?;
    let mut absep_class = absep_class_of(eq1, band);
    // A negative partial transpose is conclusive; it overrides a criterion
    // value that only sits inside the band through round-off.
    if entanglement_status == EntanglementStatus::NptEntangled {
        absep_class = AbsSepClass::NotAbsSep;
    }
    let is_extreme_certified =
        absep_class != AbsSepClass::NotAbsSep && is_equal_weight_extreme(&spectrum, d);
    Ok(ClassificationReport {
        dims: (2, d),
        rank: spectrum.rank(),
        eq1_lhs: eq1,
        purity: rho.purity(),
        in_maximal_ball: in_maximal_ball(rho),
        pt_min_eig,
        entanglement_status,
        absep_class,
        is_extreme_certified,
        spectrum,
    })
}

/// Writes a strictly interior spectrum as `(1 − 2dε)·σ + 2dε·I/2d` with
/// `σ` on the boundary.
///
/// `ε` is the smaller root of
/// `ε² − (a+b)ε + ab − c² = 0` with `a = λ_{2d−2}`, `b = λ_{2d}` and
/// `c = (λ₁ − λ_{2d−1})/2`; the quadratic is positive at zero and `−c²` at
/// `b`, so this root lies in `(0, λ_{2d}]`.
pub fn interior_decompose(s: &Spectrum, d: usize) -> Result<InteriorDecomposition> {
    let eq1 = eq1_lhs(s, d)?;
    if s.is_maximally_mixed(EQUAL_WEIGHTS) {
        return Err(Error::Precondition(
            "maximally mixed spectrum admits every epsilon",
        ));
    }
    if eq1 >= -BOUNDARY_BAND {
        return Err(Error::Precondition(
            "spectrum is not strictly interior to the absolutely separable set",
        ));
    }
    let n = 2 * d;
    let l = s.values();
    let (a, b) = (l[n - 3], l[n - 1]);
    let c = 0.5 * (l[0] - l[n - 2]);
    let disc = (a - b) * (a - b) + 4.0 * c * c;
    let larger = 0.5 * ((a + b) + sqrt(disc));
    // Product of the roots is ab − c², which avoids cancellation.
    let epsilon = ((a * b - c * c) / larger).min(b);
    let weight = n as f64 * epsilon;
    let scale = 1.0 - weight;
    if !(scale > EQUAL_WEIGHTS) {
        return Err(Error::Precondition(
            "decomposition degenerates to the maximally mixed state",
        ));
    }
    let sigma: alloc::vec::Vec<f64> = l.iter().map(|v| ((v - epsilon) / scale).max(0.0)).collect();
    let boundary_spectrum = Spectrum::new(sigma)?;
    Ok(InteriorDecomposition {
        epsilon,
        boundary_spectrum,
        mixing_weight: weight,
    })
}
