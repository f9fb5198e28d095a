//! Computations on finite commutative semirings: ideals, congruences,
//! congruence kernels, and direct decompositions of both over `S1 × S2`.
//!
//! The crate also checks Mal'cev-type term schemes exhaustively and decides
//! membership in principal ideals of `a1ℕ × a2ℕ`.

pub mod cli;
pub mod congruences;
pub mod elemset;
pub mod error;
pub mod format;
pub mod ideals;
pub mod lattice;
pub mod malcev;
pub mod numeric;
pub mod products;
pub mod semiring;

pub use congruences::Congruence;
pub use elemset::{ElemSet, IdealSet, KernelSet};
pub use error::{Error, Result};
pub use lattice::FiniteLattice;
pub use malcev::Term;
pub use semiring::{builtin, direct_product, FiniteSemiring, ProductSemiring};
