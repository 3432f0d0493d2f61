use std::sync::Arc;

use crate::algebra::{tuples_with_degree_at_most, AlgebraHom, GradedAlgebra};
use crate::error::{Check, Error, Result};
use crate::linalg::{LinearMap, SparseVec};
use crate::pbw::FilteredAlgebra;

use super::DeformationTower;

/// `A_t` with product `Σ t^k μ_k`, its value `A_1` at `t = 1` filtered by
/// internal degree, and `gr(A_1)` compared with the base.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub tower: DeformationTower,
    pub a_one: FilteredAlgebra,
    pub graded: Arc<GradedAlgebra>,
    /// The identity on bases, `gr(A_1) → A`.
    pub comparison: AlgebraHom,
    /// Structure constants of `gr(A_1)` equal those of the base.
    pub constants: Check,
    pub homomorphism: Check,
}

impl Specialization {
    pub fn passed(&self) -> bool {
        self.constants.passed() && self.homomorphism.passed()
    }
}

/// Specializes the last of a chain of towers, each reducing to the previous
/// one modulo its level.
pub fn specialize(towers: &[DeformationTower]) -> Result<Specialization> {
    let last = towers.last().ok_or_else(|| Error::Chain("no towers given".into()))?;
    for w in towers.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let same_base = lo.base().labels() == hi.base().labels() && lo.base().tables() == hi.base().tables();
        if !same_base || hi.level() < lo.level() || hi.corrections()[..lo.level()] != *lo.corrections() {
            return Err(Error::Chain(format!("the level-{} tower does not reduce to the level-{} one", hi.level(), lo.level())));
        }
    }
    let base = last.base();
    let ring = base.ring();
    let n = base.dim();
    let dmax = base.max_degree();
    let mut products = vec![SparseVec::new(); n * n];
    for pair in tuples_with_degree_at_most(base.degrees(), 2, dmax) {
        let (i, j) = (pair[0], pair[1]);
        let mut v = SparseVec::new();
        for k in 0..=last.level() {
            v.add(ring, last.mu_basis(k, i, j));
        }
        products[i * n + j] = v;
    }
    let unit = base.unit().ok_or_else(|| Error::Setup("the base has no unit".into()))?;
    let a_one = FilteredAlgebra::new(ring, base.labels().to_vec(), base.degrees().to_vec(), dmax, products, unit)?;
    let graded = Arc::new(a_one.associated_graded(base.operad().clone(), base.is_augmented())?);
    let mut constants = Check::default();
    for pair in tuples_with_degree_at_most(base.degrees(), 2, dmax) {
        let (i, j) = (pair[0], pair[1]);
        let (g, b) = (graded.mul_basis(0, i, j), base.mul_basis(0, i, j));
        constants.record(g == b, || {
            format!("gr: {} * {} = {} but {} in the base", base.labels()[i], base.labels()[j], graded.display(g), base.display(b))
        });
    }
    let comparison = AlgebraHom::new(graded.clone(), base.clone(), LinearMap::identity(ring, n))?;
    let homomorphism = comparison.check(dmax);
    Ok(Specialization { tower: last.clone(), a_one, graded, comparison, constants, homomorphism })
}
