use alloc::vec::Vec;

use libm::log2;

use super::{ComplexMatrix, DensityMatrix};
use crate::tol::SPECTRUM_SUM;
use crate::{Error, Result};

/// Which factor of a bipartite space an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Subsystem {
    A,
    B,
}

/// Kronecker product with `a` as the slow index.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

fn check_bipartite(m: &ComplexMatrix, da: usize, db: usize) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if da * db != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: da * db,
            found: m.rows(),
        });
    }
    Ok(())
}

/// Partial transpose of an operator on `da ⊗ db`.
pub fn partial_transpose(
    m: &ComplexMatrix,
    da: usize,
    db: usize,
    over: Subsystem,
) -> Result<ComplexMatrix> {
    check_bipartite(m, da, db)?;
    let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
    for a in 0..da {
        for b in 0..db {
            for a2 in 0..da {
                for b2 in 0..db {
                    let src = match over {
                        Subsystem::A => (a2 * db + b, a * db + b2),
                        Subsystem::B => (a * db + b2, a2 * db + b),
                    };
                    out[(a * db + b, a2 * db + b2)] = m[src];
                }
            }
        }
    }
    Ok(out)
}

/// Partial trace of an operator on `da ⊗ db` over the given factor.
pub fn partial_trace(
    m: &ComplexMatrix,
    da: usize,
    db: usize,
    over: Subsystem,
) -> Result<ComplexMatrix> {
    check_bipartite(m, da, db)?;
    match over {
        Subsystem::B => {
            let mut out = ComplexMatrix::zeros(da, da);
            for a in 0..da {
                for a2 in 0..da {
                    out[(a, a2)] = (0..db).map(|b| m[(a * db + b, a2 * db + b)]).sum();
                }
            }
            Ok(out)
        }
        Subsystem::A => {
            let mut out = ComplexMatrix::zeros(db, db);
            for b in 0..db {
                for b2 in 0..db {
                    out[(b, b2)] = (0..da).map(|a| m[(a * db + b, a * db + b2)]).sum();
                }
            }
            Ok(out)
        }
    }
}

/// Entropy in bits of a probability vector, with `0·log 0 = 0`.
pub fn von_neumann_entropy(probabilities: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for &p in probabilities {
        if !p.is_finite() || p < -SPECTRUM_SUM {
            return Err(Error::OutOfRange {
                name: "probability",
                value: p,
                domain: "[0, 1]",
            });
        }
        sum += p;
    }
    if (sum - 1.0).abs() > SPECTRUM_SUM {
        return Err(Error::BadSpectrumSum {
            sum,
            tol: SPECTRUM_SUM,
        });
    }
    let h: f64 = probabilities
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * log2(p))
        .sum();
    Ok(h.max(0.0))
}

/// `H₂(p) = −p log₂ p − (1−p) log₂(1−p)`, with `p` clamped to `[0, 1]`.
pub fn binary_entropy(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    [p, 1.0 - p]
        .iter()
        .filter(|&&t| t > 0.0)
        .map(|&t| -t * log2(t))
        .sum()
}

impl DensityMatrix {
    pub fn partial_transpose(&self, over: Subsystem) -> ComplexMatrix {
        partial_transpose(self.matrix(), 2, self.d(), over)
            .expect("dimensions are consistent by construction")
    }

    pub fn partial_trace(&self, over: Subsystem) -> ComplexMatrix {
        partial_trace(self.matrix(), 2, self.d(), over)
            .expect("dimensions are consistent by construction")
    }

    /// Entropy in bits of the reduced state on A.
    pub fn entanglement_entropy(&self) -> Result<f64> {
        let reduced = self.partial_trace(Subsystem::B);
        let vals: Vec<f64> = super::eigvals_hermitian(&reduced)?
            .into_iter()
            .map(|v| v.max(0.0))
            .collect();
        von_neumann_entropy(&vals)
    }
}
