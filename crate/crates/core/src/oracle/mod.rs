//! Exact brute-force verification: enumeration of `S` on a finite window,
//! membership, translator certificates, quotient witnesses, complement
//! decompositions and the bijection and identity checks built on them.

mod bijection;
mod certificate;
mod complement;
mod identity;
mod quotient;
mod table;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use bijection::{bijection_check, BijectionReport};
pub use certificate::{cone_witness, find_translator, parallelogram_points, ConeWitness};
pub use complement::{
    complement_decomposition, complement_decomposition_with, ComplementDecomposition, FlaggedClass, Translate,
};
pub use identity::{independence_failure_check, translate_identity_check, TranslateIdentityReport};
pub use quotient::{quotient_by_subsemigroup, InjectivityWitness, QuotientSearch, QuotientWitnessReport};
pub use table::{enumerate, member, ConeFrame, EnumerationTable, Lookup};

use crate::lattice::LatticeError;
use crate::Vector;

/// Resource limits for the enumeration-backed checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of lattice points in an enumeration window.
    pub cell_cap: usize,
    /// Maximum candidates per budgeted search.
    pub search_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { cell_cap: 8_000_000, search_budget: 100_000 }
    }
}

/// Outcome of a budgeted existence search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessStatus {
    Verified,
    BudgetExhausted,
    Counterexample,
}

impl fmt::Display for WitnessStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessStatus::Verified => "verified",
            WitnessStatus::BudgetExhausted => "budget-exhausted",
            WitnessStatus::Counterexample => "counterexample",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("enumeration bound {bound} exceeds the cell cap {cap}")]
    BoundTooLarge { bound: u64, cap: usize },
    #[error("{0} lies outside the enumeration window")]
    OutsideWindow(Vector),
    #[error("{0} lies outside the cone")]
    OutsideCone(Vector),
    #[error("{0} is not in S")]
    NotMember(Vector),
    #[error("subsemigroup generator {0} is not in S")]
    NotSubset(Vector),
    #[error("subsemigroup generators do not span a rank-2 lattice")]
    RankDeficient,
    #[error("certificate failed: {0}")]
    CertificateFailed(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
