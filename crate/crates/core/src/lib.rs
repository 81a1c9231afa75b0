//! Structure and K-theory of finitely generated pointed subsemigroups
//! `S ⊂ Z²` that generate Z², with exact brute-force oracles for every
//! intermediate statement.
//!
//! The K-groups come from the two asymptotic generators `a₁, a₂` alone:
//! `K₀ = Z ⊕ Z²/M·Z²` with `M = adj[a₁ a₂]`, and `K₁ = 0`.

pub mod cli;
pub mod ensemble;
pub mod ktheory;
pub mod lattice;
pub mod numsgp;
pub mod oracle;
pub mod report;
pub mod semigroup;

pub use lattice::{AbelianGroup, LatticeError};

/// Lattice point with 64-bit coordinates.
pub type Vector = lattice::LatticeVector<i64>;
/// 2×2 integer matrix with 64-bit entries.
pub type Matrix2 = lattice::IntMatrix2<i64>;
pub type Smith = lattice::SmithDecomposition<i64>;
