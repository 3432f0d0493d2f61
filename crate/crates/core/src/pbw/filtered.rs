use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::GradedAlgebra;
use crate::error::{Check, Error, Result};
use crate::linalg::{integer_echelon, quotient, ExactMatrix, GroundRing, Rref, SparseVec};
use crate::operad::FinOperad;

/// An algebra with a basis adapted to an increasing filtration
/// `F_0 ⊆ F_1 ⊆ … ⊆ F_D`; products are stored for pairs whose filtration
/// degrees sum to at most `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredAlgebra {
    ring: GroundRing,
    labels: Vec<String>,
    filtration: Vec<usize>,
    max_degree: usize,
    products: Vec<SparseVec>,
    unit: usize,
}

/// `F_p / F_{p−1}` where `F_p` is spanned by products of at most `p`
/// elements of `F_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComponent {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<BigInt>,
    /// `F_p` is all of the span of the basis vectors of filtration `≤ p`.
    pub generated: bool,
}

impl GradedComponent {
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

/// A basis of the span of `vectors` (a ℤ-basis over the integers).
fn lattice_basis(ring: GroundRing, vectors: &[SparseVec]) -> Vec<SparseVec> {
    if ring == GroundRing::Integers {
        return integer_echelon(vectors).rows;
    }
    let mut rref = Rref::new(ring);
    for v in vectors {
        rref.insert(v);
    }
    rref.rows().map(|(_, r)| r.clone()).collect()
}

impl FilteredAlgebra {
    pub fn new(
        ring: GroundRing,
        labels: Vec<String>,
        filtration: Vec<usize>,
        max_degree: usize,
        products: Vec<SparseVec>,
        unit: usize,
    ) -> Result<Self> {
        let dim = labels.len();
        if filtration.len() != dim || products.len() != dim * dim || unit >= dim {
            return Err(Error::Dim(format!("a filtered algebra on {dim} basis vectors needs {} products", dim * dim)));
        }
        if filtration.windows(2).any(|w| w[0] > w[1]) || filtration.iter().any(|&f| f > max_degree) {
            return Err(Error::Degree("the basis must be sorted by filtration degree up to the truncation".into()));
        }
        if products.iter().any(|v| v.max_index().is_some_and(|m| m >= dim)) {
            return Err(Error::Dim("product outside the basis".into()));
        }
        Ok(FilteredAlgebra { ring, labels, filtration, max_degree, products, unit })
    }

    pub fn ring(&self) -> GroundRing {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn filtration_degree(&self, i: usize) -> usize {
        self.filtration[i]
    }

    pub fn filtration_degrees(&self) -> &[usize] {
        &self.filtration
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// Ranks of `F_0, …, F_D`.
    pub fn filtration_ranks(&self) -> Vec<usize> {
        (0..=self.max_degree).map(|p| self.filtration.iter().filter(|&&f| f <= p).count()).collect()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim() + j]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(self.ring, &self.ring.mul(a, b), self.mul_basis(i, j));
            }
        }
        out
    }

    pub fn display(&self, v: &SparseVec) -> String {
        v.display_with(&self.labels)
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.dim();
        (0..n).flat_map(move |i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| self.filtration[i] + self.filtration[j] <= self.max_degree)
    }

    /// `F_p · F_q ⊆ F_{p+q}` on basis pairs.
    pub fn check_filtered(&self) -> Check {
        let mut c = Check::default();
        for (i, j) in self.pairs() {
            let bound = self.filtration[i] + self.filtration[j];
            let v = self.mul_basis(i, j);
            c.record(v.indices().all(|k| self.filtration[k] <= bound), || {
                format!("{} * {} = {} leaves F_{bound}", self.labels[i], self.labels[j], self.display(v))
            });
        }
        c
    }

    pub fn check_associative(&self) -> Check {
        let mut c = Check::default();
        for (i, j) in self.pairs() {
            for k in 0..self.dim() {
                if self.filtration[i] + self.filtration[j] + self.filtration[k] > self.max_degree {
                    continue;
                }
                let ek = SparseVec::unit(k);
                let lhs = self.mul(self.mul_basis(i, j), &ek);
                let rhs = self.mul(&SparseVec::unit(i), &self.mul(&SparseVec::unit(j), &ek));
                c.record(lhs == rhs, || {
                    format!("({} {}) {} = {} but {} ({} {}) = {}", self.labels[i], self.labels[j], self.labels[k], self.display(&lhs), self.labels[i], self.labels[j], self.labels[k], self.display(&rhs))
                });
            }
        }
        c
    }

    pub fn check_unit(&self) -> Check {
        let mut c = Check::default();
        for i in 0..self.dim() {
            let e = SparseVec::unit(i);
            c.record(*self.mul_basis(self.unit, i) == e && *self.mul_basis(i, self.unit) == e, || {
                format!("the unit does not act trivially on {}", self.labels[i])
            });
        }
        c
    }

    /// `F_p` as the span of products of at most `p` elements of `F_1`, and
    /// each `F_p / F_{p−1}` with its invariant factors.
    pub fn graded_components(&self) -> Result<Vec<GradedComponent>> {
        let ring = self.ring;
        let low: Vec<SparseVec> = (0..self.dim()).filter(|&i| self.filtration[i] <= 1).map(SparseVec::unit).collect();
        let mut previous: Vec<SparseVec> = Vec::new();
        let mut out = Vec::new();
        for p in 0..=self.max_degree {
            let span: Vec<SparseVec> = if p == 0 {
                (0..self.dim()).filter(|&i| self.filtration[i] == 0).map(SparseVec::unit).collect()
            } else {
                let mut gens = previous.clone();
                for x in &previous {
                    for y in &low {
                        gens.push(self.mul(x, y));
                    }
                }
                gens
            };
            let basis = lattice_basis(ring, &span);
            let ambient = self.filtration.iter().filter(|&&f| f <= p).count();
            let inside = basis.iter().all(|v| v.indices().all(|k| self.filtration[k] <= p));
            let full = ExactMatrix::from_columns(ring, self.dim(), &basis);
            let generated = inside && (0..ambient).all(|k| full.solve(&SparseVec::unit(k)).is_some());
            let relations: Vec<SparseVec> = if p == 0 {
                Vec::new()
            } else {
                previous
                    .iter()
                    .map(|v| full.solve(v).ok_or_else(|| Error::Setup(format!("F_{} is not contained in F_{p}", p - 1))))
                    .collect::<Result<_>>()?
            };
            let q = quotient(ring, basis.len(), &relations)?;
            out.push(GradedComponent { degree: p, rank: q.rank, torsion: q.torsion, generated });
            previous = basis;
        }
        Ok(out)
    }

    /// The associated graded algebra on the same basis, over `operad`.
    pub fn associated_graded(&self, operad: Arc<FinOperad>, augmented: bool) -> Result<GradedAlgebra> {
        let mut components = vec![Vec::new(); self.max_degree + 1];
        for (i, l) in self.labels.iter().enumerate() {
            components[self.filtration[i]].push(l.clone());
        }
        let n = self.dim();
        let mut product = vec![SparseVec::new(); n * n];
        for (i, j) in self.pairs() {
            let bound = self.filtration[i] + self.filtration[j];
            let mut v = self.mul_basis(i, j).clone();
            v.retain(|k| self.filtration[k] == bound);
            product[i * n + j] = v;
        }
        GradedAlgebra::from_product(operad, components, product, Some(self.unit), augmented)
    }

    /// Nonzero structure constants, one line per basis pair.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "filtered algebra, {} basis vectors, F ranks {:?}", self.dim(), self.filtration_ranks());
        for (i, j) in self.pairs() {
            let v = self.mul_basis(i, j);
            if !v.is_zero() {
                let _ = writeln!(s, "  {} * {} = {}", self.labels[i], self.labels[j], self.display(v));
            }
        }
        s
    }
}
