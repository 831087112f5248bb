//! Computations for the hit problem over the mod-2 Steenrod algebra: bases of
//! `QP_k = F_2 ⊗_A F_2[x_1, ..., x_k]` in a degree, the weight-filtered pieces
//! `QP_k(ω)`, invariants under `Σ_k` and `GL_k(F_2)`, and Kameko's squaring map.

pub mod cache;
pub mod f2linalg;
pub mod fixtures;
pub mod group_action;
pub mod hit;
pub mod kameko;
pub mod monomial;
pub mod steenrod;

use thiserror::Error;

pub use f2linalg::{BitVector, LinalgError, LinearMap, Subspace};
pub use group_action::{GroupKind, InvariantSpace};
pub use hit::{AdmissibleBasis, HitSpace, Strategy, WeightQuotient};
pub use kameko::{KamekoContext, KamekoMap};
pub use monomial::{Monomial, MonomialError, WeightVector};
pub use steenrod::Polynomial;

/// Largest number of variables any entry point accepts.
pub const MAX_K: usize = 5;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// An internal consistency check failed.
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("fixture line {line}: {msg}")]
    Fixture { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
