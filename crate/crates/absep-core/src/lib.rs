//! Absolute separability of `2 ⊗ d` bipartite states.
//!
//! A state is absolutely separable when no global unitary can make it
//! entangled. In `2 ⊗ d` this is decided by its spectrum alone:
//!
//! ```text
//! λ₁ − λ_{2d−1} − 2·√(λ_{2d−2}·λ_{2d}) ≤ 0      (eigenvalues in decreasing order)
//! ```
//!
//! The crate provides
//!
//! - [`linalg`]: small dense complex linear algebra (Jacobi eigensolver,
//!   Kronecker products, partial transpose and trace, purity, entropy),
//! - [`criteria`]: the spectral criterion, maximal-ball membership, the PPT
//!   test and the extreme / boundary / interior classification,
//! - [`constructors`]: named states and families (Werner, rank-`(2d−1)`
//!   extreme points, absolutely separable states outside the maximal ball,
//!   non-extreme boundary families),
//! - [`channels`]: Kraus representations of depolarizing, amplitude- and
//!   phase-damping noise and of unitary-plus-ancilla dilations,
//! - [`thresholds`]: noise thresholds for separability and absolute
//!   separability, region maps and the analytic cross-checks.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]
// `!(x <= tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod channels;
pub mod constructors;
pub mod criteria;
mod error;
pub mod linalg;
pub mod random;
pub mod thresholds;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, Spectrum, Subsystem};
pub use num_complex::Complex64;
