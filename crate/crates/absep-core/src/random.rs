//! Seeded random frames and Haar unitaries.
//!
//! Everything here is deterministic for a given seed: a `ChaCha8` stream
//! feeds standard-normal complex vectors that are orthonormalized by
//! modified Gram–Schmidt.

use alloc::vec::Vec;

use libm::sqrt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::ComplexMatrix;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Vector of `n` independent complex normals with unit variance per
/// component.
pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(standard_normal(rng), standard_normal(rng)))
        .collect()
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(v: &[Complex64]) -> f64 {
    sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

/// Modified Gram–Schmidt, applied twice. Returns `None` if a vector is
/// numerically dependent on its predecessors.
pub fn orthonormalize(vectors: &[Vec<Complex64>]) -> Option<Vec<Vec<Complex64>>> {
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        let original = norm(&w);
        for _ in 0..2 {
            for q in &out {
                let c = inner(q, &w);
                w.iter_mut().zip(q).for_each(|(wi, qi)| *wi -= c * qi);
            }
        }
        let n = norm(&w);
        if !(n > 1e-10 * original.max(1e-300)) {
            return None;
        }
        w.iter_mut().for_each(|z| *z /= n);
        out.push(w);
    }
    Some(out)
}

/// `count` orthonormal vectors in `C^dim`.
pub fn random_frame<R: Rng + ?Sized>(rng: &mut R, dim: usize, count: usize) -> Vec<Vec<Complex64>> {
    assert!(count <= dim, "cannot fit {count} orthonormal vectors in dimension {dim}");
    loop {
        let raw: Vec<_> = (0..count).map(|_| gaussian_vector(rng, dim)).collect();
        if let Some(frame) = orthonormalize(&raw) {
            return frame;
        }
    }
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// diagonal of R made positive, which Gram–Schmidt does implicitly.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let cols = random_frame(rng, n, n);
    ComplexMatrix::from_columns(&cols).expect("frame columns have equal length")
}
