//! Kraus representations of the qubit noise channels and of channels
//! induced by a global unitary acting with an ancilla.
//!
//! The parameter `p` is always the channel's own parameter: the noise
//! strength is `1 − p` for depolarizing noise, the decay probability is
//! `1 − p` for amplitude damping, and the dephasing strength is `p` for
//! phase damping. [`KrausSet`] records its [`ChannelKind`] so the three
//! readings cannot be confused.

use alloc::vec;
use alloc::vec::Vec;

use libm::sqrt;
use num_complex::Complex64;

use crate::linalg::{partial_trace, tensor, ComplexMatrix, DensityMatrix, Subsystem};
use crate::tol::{KRAUS_COMPLETENESS, UNITARITY};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum ChannelKind {
    Dpc,
    Adc,
    Pdc,
    FromUnitary,
    Custom,
}

/// Pauli matrices with `σ_y = [[0, −i], [i, 0]]`.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).expect("2x2")
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_vec(
        2,
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
    .expect("2x2")
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&[1.0, -1.0])
}

/// A trace-preserving channel `ρ ↦ Σ K ρ K†`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    operators: Vec<ComplexMatrix>,
    param_p: f64,
    kind: ChannelKind,
}

/// `max |Σ K†K − I|`.
pub fn completeness_defect(operators: &[ComplexMatrix]) -> f64 {
    let n = operators[0].cols();
    let mut sum = ComplexMatrix::zeros(n, n);
    for k in operators {
        sum = &sum + &(&k.adjoint() * k);
    }
    sum.max_abs_diff(&ComplexMatrix::identity(n))
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "p",
            value: p,
            domain: "[0, 1]",
        })
    }
}

impl KrausSet {
    /// Validates shapes and completeness.
    pub fn new(operators: Vec<ComplexMatrix>, param_p: f64, kind: ChannelKind) -> Result<Self> {
        let first = operators.first().ok_or(Error::InvalidParameter {
            name: "operators",
            reason: "empty Kraus set",
        })?;
        let n = first.rows();
        for k in &operators {
            if !k.is_square() {
                return Err(Error::NotSquare {
                    rows: k.rows(),
                    cols: k.cols(),
                });
            }
            if k.rows() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: k.rows(),
                });
            }
        }
        let deviation = completeness_defect(&operators);
        if !(deviation <= KRAUS_COMPLETENESS) {
            return Err(Error::Incomplete {
                deviation,
                tol: KRAUS_COMPLETENESS,
            });
        }
        Ok(Self {
            operators,
            param_p,
            kind,
        })
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn param_p(&self) -> f64 {
        self.param_p
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    /// Dimension of the space the operators act on.
    pub fn dim(&self) -> usize {
        self.operators[0].rows()
    }

    pub fn completeness_defect(&self) -> f64 {
        completeness_defect(&self.operators)
    }

    /// `Σ K m K†`.
    pub fn apply(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        if !m.is_square() || m.rows() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: m.rows(),
            });
        }
        let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
        for k in &self.operators {
            out = &out + &m.conjugate_by(k);
        }
        Ok(out)
    }
}

/// `ρ ↦ pρ + (1−p)/3 Σᵢ σᵢρσᵢ`.
pub fn dpc_kraus(p: f64) -> Result<KrausSet> {
    check_probability(p)?;
    let w = sqrt((1.0 - p) / 3.0);
    KrausSet::new(
        vec![
            ComplexMatrix::identity(2).scale(sqrt(p)),
            pauli_x().scale(w),
            pauli_y().scale(w),
            pauli_z().scale(w),
        ],
        p,
        ChannelKind::Dpc,
    )
}

/// `K₁ = diag(1, √p)`, `K₂ = √(1−p)|0⟩⟨1|`.
pub fn adc_kraus(p: f64) -> Result<KrausSet> {
    check_probability(p)?;
    KrausSet::new(
        vec![
            ComplexMatrix::from_diagonal(&[1.0, sqrt(p)]),
            ComplexMatrix::from_real(2, 2, &[0.0, sqrt(1.0 - p), 0.0, 0.0])?,
        ],
        p,
        ChannelKind::Adc,
    )
}

/// `√(1−p) I`, `√p |0⟩⟨0|`, `√p |1⟩⟨1|`: coherences shrink by `1 − p`.
pub fn pdc_kraus(p: f64) -> Result<KrausSet> {
    check_probability(p)?;
    KrausSet::new(
        vec![
            ComplexMatrix::identity(2).scale(sqrt(1.0 - p)),
            ComplexMatrix::from_diagonal(&[sqrt(p), 0.0]),
            ComplexMatrix::from_diagonal(&[0.0, sqrt(p)]),
        ],
        p,
        ChannelKind::Pdc,
    )
}

/// Builds the named qubit channel at parameter `p`.
pub fn qubit_channel(kind: ChannelKind, p: f64) -> Result<KrausSet> {
    match kind {
        ChannelKind::Dpc => dpc_kraus(p),
        ChannelKind::Adc => adc_kraus(p),
        ChannelKind::Pdc => pdc_kraus(p),
        ChannelKind::FromUnitary | ChannelKind::Custom => Err(Error::InvalidParameter {
            name: "kind",
            reason: "only DPC, ADC and PDC have a parametrised qubit form",
        }),
    }
}

/// `Σᵢⱼ (Kᵢ⊗K′ⱼ) ρ (Kᵢ⊗K′ⱼ)†`.
pub fn apply_local_product(rho: &DensityMatrix, on_a: &KrausSet, on_b: &KrausSet) -> Result<DensityMatrix> {
    if on_a.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: on_a.dim(),
        });
    }
    if on_b.dim() != rho.d() {
        return Err(Error::DimensionMismatch {
            expected: rho.d(),
            found: on_b.dim(),
        });
    }
    let n = rho.dim();
    let mut out = ComplexMatrix::zeros(n, n);
    for ka in on_a.operators() {
        for kb in on_b.operators() {
            let k = tensor(ka, kb);
            out = &out + &rho.matrix().conjugate_by(&k);
        }
    }
    Ok(DensityMatrix::from_trusted(out, rho.d()))
}

fn check_unitary(u: &ComplexMatrix, ancilla_dim: usize) -> Result<usize> {
    if !u.is_square() {
        return Err(Error::NotSquare {
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    if ancilla_dim == 0 || !u.rows().is_multiple_of(ancilla_dim) {
        return Err(Error::InvalidParameter {
            name: "ancilla_dim",
            reason: "must divide the unitary's dimension",
        });
    }
    let deviation = u.unitarity_defect();
    if !(deviation <= UNITARITY) {
        return Err(Error::NotUnitary {
            deviation,
            tol: UNITARITY,
        });
    }
    Ok(u.rows() / ancilla_dim)
}

/// `K_μ = ⟨μ|U|0⟩` for `U` on system ⊗ ancilla, ancilla starting in `|0⟩`.
pub fn channel_from_unitary(u: &ComplexMatrix, ancilla_dim: usize) -> Result<KrausSet> {
    let n = check_unitary(u, ancilla_dim)?;
    let m = ancilla_dim;
    let operators = (0..m)
        .map(|mu| {
            let mut k = ComplexMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    k[(i, j)] = u[(i * m + mu, j * m)];
                }
            }
            k
        })
        .collect();
    // Completeness is inherited from unitarity; re-check against the
    // tighter Kraus bound.
    KrausSet::new(operators, f64::NAN, ChannelKind::FromUnitary)
}

/// `Tr_anc[U (ρ ⊗ |0⟩⟨0|) U†]` evaluated directly.
pub fn dilate_and_trace(u: &ComplexMatrix, rho: &ComplexMatrix, ancilla_dim: usize) -> Result<ComplexMatrix> {
    let n = check_unitary(u, ancilla_dim)?;
    if !rho.is_square() || rho.rows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: rho.rows(),
        });
    }
    let mut anc = ComplexMatrix::zeros(ancilla_dim, ancilla_dim);
    anc[(0, 0)] = Complex64::new(1.0, 0.0);
    let joint = tensor(rho, &anc).conjugate_by(u);
    partial_trace(&joint, n, ancilla_dim, Subsystem::B)
}

/// `ρ ⊗ σ` with `σ` joined to side B, giving a state on `2 ⊗ (d·dim σ)`.
pub fn extend_with_ancilla(rho: &DensityMatrix, ancilla: &ComplexMatrix) -> Result<DensityMatrix> {
    crate::linalg::validate_state_matrix(ancilla)?;
    let d = rho.d() * ancilla.rows();
    if 2 * d > crate::tol::MAX_DIM {
        return Err(Error::TooLarge(2 * d));
    }
    Ok(DensityMatrix::from_trusted(tensor(rho.matrix(), ancilla), d))
}
