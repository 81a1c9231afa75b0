//! Exact integer linear algebra on Z²: gcds, 2×2 matrices, Smith and
//! Hermite forms, Diophantine solving and cokernels.
//!
//! Everything here is generic over [`LatticeScalar`] and uses checked
//! arithmetic throughout.

mod group;
mod hermite;
mod matrix;
mod scalar;
mod smith;
mod vector;

pub use group::{cokernel_invariants, lattice_quotient, AbelianGroup};
pub use hermite::{combine, solve_diophantine, HermiteForm};
pub use matrix::IntMatrix2;
pub use scalar::{div_ceil, div_floor, ext_gcd, gcd, LatticeScalar};
pub use smith::{smith_normal_form, SmithDecomposition};
pub use vector::LatticeVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("integer overflow in exact lattice arithmetic")]
    Overflow,
    #[error("no integer solution")]
    NoSolution,
    #[error("matrix has no columns")]
    EmptyMatrix,
}
