//! Exact computations with algebraic operads, their algebras and modules,
//! enveloping algebras, Quillen cohomology of Lie algebras in low degrees,
//! and the PBW deformation comparison.

pub mod algebra;
pub mod amodule;
pub mod deformation;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod operad;
pub mod pbw;
pub mod perm;

pub use error::{Check, Error, Result};
