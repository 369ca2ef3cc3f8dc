//! Exact arithmetic for finite fields and finite-dimensional commutative
//! `F_q`-algebras: subalgebras, ideals, conductors, local structure and
//! module lengths.

pub mod extension;
pub mod field;
pub mod linalg;
pub mod structure;
pub mod subalgebra;

pub use extension::{Extension, ResidualExtension};
pub use field::{FiniteField, Scalar};
pub use linalg::{Subspace, Vector};
pub use structure::{Algebra, Element, Factor, LocalDecomposition, Quotient};
pub use subalgebra::{conductor, Ideal, RingSpectrum, Subalgebra};
