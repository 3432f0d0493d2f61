//! Exact linear algebra over ℚ, ℤ and prime fields.

pub mod echelon;
mod matrix;
mod quotient;
mod ring;
mod snf;
mod vector;

use std::collections::HashSet;

pub use echelon::{fraction_field, integer_echelon, rank_of_rows, IntegerEchelon, Rref};
pub use matrix::ExactMatrix;
pub use quotient::{coinvariants, coinvariants_by_elimination, coinvariants_of_module, quotient, Quotient};
pub use ring::{fmt_scalar, GroundRing, Scalar};
pub use snf::{invariant_factors, smith_normal_form, SmithForm};
pub use vector::{LinearMap, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no canonical ring map {0} -> {1}")]
    NoRingMap(GroundRing, GroundRing),
    #[error("dimension mismatch: {0}")]
    Dim(String),
    #[error("unsupported ring: {0}")]
    Ring(String),
}

/// A finite free module with named basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedModule {
    pub ring: GroundRing,
    pub labels: Vec<String>,
}

impl BasedModule {
    pub fn new(ring: GroundRing, labels: Vec<String>) -> Result<Self, LinalgError> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(LinalgError::Dim(format!("duplicate basis label {l}")));
            }
        }
        Ok(BasedModule { ring, labels })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}
