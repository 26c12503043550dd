//! Dense complex linear algebra for matrices of dimension at most
//! [`MAX_DIM`](crate::tol::MAX_DIM).
//!
//! Basis ordering for a bipartite `dA ⊗ dB` space is `|a⟩⊗|b⟩ ↦ a·dB + b`,
//! so subsystem A is the slow index.

mod eigen;
mod matrix;
mod ops;
mod state;

pub use eigen::{eig_hermitian, eigvals_hermitian, HermitianEigen};
pub use matrix::ComplexMatrix;
pub use ops::{
    binary_entropy, partial_trace, partial_transpose, tensor, von_neumann_entropy, Subsystem,
};
pub use state::{validate_state_matrix, DensityMatrix, Spectrum};
