//! Intermediate-ring lattices of finite commutative algebra extensions.
//!
//! Given finite `F_q`-algebras `R ⊆ S`, this crate enumerates the interval
//! `[R, S]`, classifies its minimal steps, computes the seminormalization and
//! t-closure, and predicts the chain length, the residual invariant `Λ` and
//! the FIP behaviour of the Nagata extension `R(X) ⊆ S(X)`.

pub mod algebra;
pub mod canonical;
pub mod cli;
pub mod error;
pub mod gen;
pub mod lattice;
pub mod nagata;

pub use algebra::{Algebra, Extension, FiniteField, Subalgebra, Subspace};
pub use error::{Error, Result};
