//! Graded deformations `A_t = A ⊗ R[t]/t^{i+1}` of an augmented associative
//! algebra with `deg t = 1`, built level by level: obstructions,
//! prolongations, automorphisms and the specialization `t = 1`.

mod prolong;
mod specialize;
mod straighten;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{tuples_with_degree_at_most, GradedAlgebra, LieAlgebraData};
use crate::amodule::{derivations, AModule};
use crate::error::{Check, Error, Result};
use crate::linalg::{fraction_field, BasedModule, ExactMatrix, LinearMap, Rref, SparseVec};
use crate::operad::{build_standard, OperadKind};

pub use prolong::{obstruction, prolong, prolong_with, tower_isomorphism, ObstructionClass, PivotOrder, Prolongation};
pub use specialize::{specialize, Specialization};
pub use straighten::{at_t_one, t_part, Straightener, TNormalForm};

/// `S(V)` on nondecreasing monomials in the basis of `V`, ordered by degree
/// and then lexicographically, truncated at `max_degree`.
#[derive(Clone, Debug)]
pub struct SymmetricBase {
    pub algebra: Arc<GradedAlgebra>,
    pub generators: BasedModule,
    pub monomials: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

fn monomial_label(labels: &[String], m: &[usize]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut k = 0;
    while k < m.len() {
        let run = m[k..].iter().take_while(|&&x| x == m[k]).count();
        let name = &labels[m[k]];
        parts.push(if run == 1 { name.clone() } else { format!("{name}^{run}") });
        k += run;
    }
    parts.join("*")
}

impl SymmetricBase {
    pub fn new(generators: &BasedModule, max_degree: usize) -> Result<Self> {
        let ring = generators.ring;
        let r = generators.rank();
        let mut by_degree: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
        for _ in 0..max_degree {
            let next = by_degree
                .last()
                .unwrap()
                .iter()
                .flat_map(|m| {
                    let start = m.last().copied().unwrap_or(0);
                    (start..r).map(move |x| {
                        let mut n = m.clone();
                        n.push(x);
                        n
                    })
                })
                .collect();
            by_degree.push(next);
        }
        let monomials: Vec<Vec<usize>> = by_degree.iter().flatten().cloned().collect();
        let index: BTreeMap<Vec<usize>, usize> = monomials.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        let dim = monomials.len();
        let mut product = vec![SparseVec::new(); dim * dim];
        for (i, a) in monomials.iter().enumerate() {
            for (j, b) in monomials.iter().enumerate() {
                if a.len() + b.len() <= max_degree {
                    let mut m = [a.as_slice(), b.as_slice()].concat();
                    m.sort_unstable();
                    product[i * dim + j] = SparseVec::unit(index[&m]);
                }
            }
        }
        let components = by_degree.iter().map(|ms| ms.iter().map(|m| monomial_label(&generators.labels, m)).collect()).collect();
        let op = Arc::new(build_standard(OperadKind::Com, true, ring, 3)?);
        let algebra = Arc::new(GradedAlgebra::from_product(op, components, product, Some(0), true)?);
        Ok(SymmetricBase { algebra, generators: generators.clone(), monomials, index })
    }

    pub fn index_of(&self, monomial: &[usize]) -> Option<usize> {
        self.index.get(monomial).copied()
    }

    /// Global index of generator `a`.
    pub fn generator(&self, a: usize) -> usize {
        1 + a
    }
}

/// Corrections `μ_1, …, μ_i` of a graded deformation; `μ_k` lowers degree by
/// `k`, vanishes on the unit and maps `A_+ ⊗ A_+` into `A_+`. Products are
/// stored for pairs of total degree at most the truncation of `A`.
#[derive(Clone, Debug)]
pub struct DeformationTower {
    base: Arc<GradedAlgebra>,
    symmetric: Option<Arc<SymmetricBase>>,
    corrections: Vec<Vec<SparseVec>>,
}

impl DeformationTower {
    /// The level-0 tower `A` itself.
    pub fn trivial(base: Arc<GradedAlgebra>) -> Result<Self> {
        let op = base.operad();
        if !matches!(op.kind(), OperadKind::Ass | OperadKind::Com) || !op.is_unital() || base.unit().is_none() {
            return Err(Error::Operad(format!("deformations need a unital associative algebra, got {}", op.name())));
        }
        if !base.is_augmented() {
            return Err(Error::Setup("the base algebra is not augmented".into()));
        }
        Ok(DeformationTower { base, symmetric: None, corrections: Vec::new() })
    }

    /// A tower with the given corrections, re-verified.
    pub fn from_corrections(base: Arc<GradedAlgebra>, corrections: Vec<Vec<SparseVec>>) -> Result<Self> {
        let mut t = Self::trivial(base)?;
        let dim = t.base.dim();
        if corrections.iter().any(|c| c.len() != dim * dim) {
            return Err(Error::Dim(format!("correction tables must have {} entries", dim * dim)));
        }
        t.corrections = corrections;
        t.verified()
    }

    fn verified(self) -> Result<Self> {
        let c = self.certificate();
        match c.witness {
            None => Ok(self),
            Some(w) => Err(Error::Setup(format!("not a deformation: {w}"))),
        }
    }

    fn with_symmetric(mut self, s: Arc<SymmetricBase>) -> Self {
        self.symmetric = Some(s);
        self
    }

    pub fn base(&self) -> &Arc<GradedAlgebra> {
        &self.base
    }

    /// Present when the base is `S(g)` built from a bracket.
    pub fn symmetric_base(&self) -> Option<&Arc<SymmetricBase>> {
        self.symmetric.as_ref()
    }

    pub fn level(&self) -> usize {
        self.corrections.len()
    }

    pub fn max_degree(&self) -> usize {
        self.base.max_degree()
    }

    pub fn corrections(&self) -> &[Vec<SparseVec>] {
        &self.corrections
    }

    /// `μ_k(x_i, x_j)`, with `μ_0` the product of the base.
    pub fn mu_basis(&self, k: usize, i: usize, j: usize) -> &SparseVec {
        if k == 0 {
            self.base.mul_basis(0, i, j)
        } else {
            &self.corrections[k - 1][i * self.base.dim() + j]
        }
    }

    pub fn mu(&self, k: usize, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let ring = self.base.ring();
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(ring, &ring.mul(a, b), self.mu_basis(k, i, j));
            }
        }
        out
    }

    /// The same tower reduced modulo `t^{level+1}`.
    pub fn truncated(&self, level: usize) -> Self {
        let mut t = self.clone();
        t.corrections.truncate(level);
        t
    }

    /// `Σ_{p+q=n} μ_p(μ_q(a,b),c) − μ_p(a,μ_q(b,c))` on basis vectors.
    pub fn associator(&self, n: usize, a: usize, b: usize, c: usize) -> SparseVec {
        let ring = self.base.ring();
        let mut out = SparseVec::new();
        for p in 0..=n {
            let q = n - p;
            out.add(ring, &self.mu(p, self.mu_basis(q, a, b), &SparseVec::unit(c)));
            out.add_scaled(ring, &ring.from_int(-1), &self.mu(p, &SparseVec::unit(a), self.mu_basis(q, b, c)));
        }
        out
    }

    /// Shape of every correction and associativity at every order up to the
    /// level, on all basis triples of total degree at most the truncation.
    pub fn certificate(&self) -> Check {
        let a = &*self.base;
        let dmax = a.max_degree();
        let unit = a.unit();
        let positive = a.range(1).start;
        let mut check = Check::default();
        for (k0, table) in self.corrections.iter().enumerate() {
            let k = k0 + 1;
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    let v = &table[i * a.dim() + j];
                    let total = a.degree(i) + a.degree(j);
                    let ok = if total > dmax {
                        v.is_zero()
                    } else if unit == Some(i) || unit == Some(j) || total < k {
                        v.is_zero()
                    } else {
                        a.is_homogeneous(v, total - k) && v.indices().all(|z| z >= positive)
                    };
                    check.record(ok, || format!("μ_{k}({}, {}) = {}", a.labels()[i], a.labels()[j], a.display(v)));
                }
            }
        }
        let triples = tuples_with_degree_at_most(a.degrees(), 3, dmax);
        for n in 0..=self.level() {
            let witnesses: Vec<Option<String>> = triples
                .par_iter()
                .map(|t| {
                    let v = self.associator(n, t[0], t[1], t[2]);
                    (!v.is_zero()).then(|| {
                        let names: Vec<&str> = t.iter().map(|&x| a.labels()[x].as_str()).collect();
                        format!("order {n} associator on ({}) = {}", names.join(", "), a.display(&v))
                    })
                })
                .collect();
            for w in witnesses {
                check.record(w.is_none(), || w.unwrap());
            }
        }
        check
    }

    /// Structure constants of every `μ_k`, one line per nonzero product.
    pub fn dump(&self) -> String {
        let a = &*self.base;
        let mut s = String::new();
        let _ = writeln!(s, "tower over {} basis vectors, level {}, truncated at degree {}", a.dim(), self.level(), a.max_degree());
        for k in 1..=self.level() {
            let _ = writeln!(s, "mu_{k}:");
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    let v = self.mu_basis(k, i, j);
                    if !v.is_zero() {
                        let _ = writeln!(s, "  ({}, {}) -> {}", a.labels()[i], a.labels()[j], a.display(v));
                    }
                }
            }
        }
        s
    }
}

/// The level-1 tower on `S(g)` whose `μ_1` is the order-`t` part of
/// straightening `x_b x_a → x_a x_b + t [x_b, x_a]` on monomials. Any
/// antisymmetric bracket gives a valid level-1 deformation.
pub fn level_one_from_bracket(g: &LieAlgebraData, max_degree: usize) -> Result<DeformationTower> {
    let ring = g.ring();
    let sym = Arc::new(SymmetricBase::new(&g.module, max_degree)?);
    let dim = sym.monomials.len();
    let mut st = Straightener::new(g, 1);
    let mut mu1 = vec![SparseVec::new(); dim * dim];
    for (i, a) in sym.monomials.iter().enumerate() {
        for (j, b) in sym.monomials.iter().enumerate() {
            if a.len() + b.len() > max_degree {
                continue;
            }
            let nf = st.normal_form(&[a.as_slice(), b.as_slice()].concat());
            let mut v = SparseVec::new();
            for (m, c) in t_part(&nf, 1) {
                v.add_at(ring, sym.index[m], c);
            }
            mu1[i * dim + j] = v;
        }
    }
    let base = sym.algebra.clone();
    Ok(DeformationTower::from_corrections(base, vec![mu1])?.with_symmetric(sym))
}

/// Maps `id + t^L d` fixing a level-`L` tower modulo `t^{L+1}`, compared
/// with the derivations `Ω(A, A_+)_{−L}`.
#[derive(Clone, Debug)]
pub struct AutomorphismReport {
    pub degree: i64,
    /// Solutions `d: A → A` of the automorphism equations.
    pub basis: Vec<LinearMap>,
    /// Derivations into `A_+`, in the coordinates of `A`.
    pub derivations: Vec<LinearMap>,
    pub same_span: bool,
}

impl AutomorphismReport {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// `d` of degree `−L` with values in `A_+` such that `id + t^L d` preserves
/// the product modulo `t^{L+1}`, i.e. `d(ab) = d(a) b + a d(b)`.
pub fn tower_automorphisms(tower: &DeformationTower) -> Result<AutomorphismReport> {
    let l = tower.level();
    if l == 0 {
        return Err(Error::Setup("automorphisms are taken over a tower of level at least 1".into()));
    }
    let a = &*tower.base;
    let ring = a.ring();
    let positive = a.range(1).start;
    let shift = l as i64;
    let targets = |x: usize| -> Vec<usize> {
        let d = a.degree(x) as i64 - shift;
        if d < 1 {
            Vec::new()
        } else {
            a.range(d as usize).collect()
        }
    };
    let mut cols = Vec::new();
    let mut unknown = BTreeMap::new();
    for x in 0..a.dim() {
        for z in targets(x) {
            unknown.insert((x, z), cols.len());
            cols.push((x, z));
        }
    }
    let mut rows = Vec::new();
    for pair in tuples_with_degree_at_most(a.degrees(), 2, a.max_degree()) {
        let (x, y) = (pair[0], pair[1]);
        let mut eq: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (w, c) in a.mul_basis(0, x, y).iter() {
            for z in targets(w) {
                eq.entry(z).or_default().add_at(ring, unknown[&(w, z)], c);
            }
        }
        for z in targets(x) {
            for (w, c) in a.mul_basis(0, z, y).iter() {
                eq.entry(w).or_default().add_at(ring, unknown[&(x, z)], &ring.neg(c));
            }
        }
        for z in targets(y) {
            for (w, c) in a.mul_basis(0, x, z).iter() {
                eq.entry(w).or_default().add_at(ring, unknown[&(y, z)], &ring.neg(c));
            }
        }
        rows.extend(eq.into_values().filter(|r| !r.is_zero()));
    }
    let kernel = ExactMatrix::new(ring, rows.len(), cols.len(), rows).kernel_basis();
    let basis: Vec<LinearMap> = kernel
        .iter()
        .map(|v| {
            let mut images = vec![SparseVec::new(); a.dim()];
            for (k, c) in v.iter() {
                let (x, z) = cols[k];
                images[x].add_at(ring, z, c);
            }
            LinearMap::from_images(ring, a.dim(), images)
        })
        .collect();

    let ideal = AModule::augmentation_ideal(tower.base.clone())?;
    let derivs: Vec<LinearMap> = derivations(&ideal, -shift)
        .into_iter()
        .map(|d| {
            let images = d.images.iter().map(|v| v.map_indices(ring, |k| Some(k + positive))).collect();
            LinearMap::from_images(ring, a.dim(), images)
        })
        .collect();
    let flatten = |m: &LinearMap| -> SparseVec {
        let mut out = SparseVec::new();
        for (x, v) in m.images.iter().enumerate() {
            for (z, c) in v.iter() {
                out.add_at(ring, x * a.dim() + z, c);
            }
        }
        out
    };
    let field = fraction_field(ring);
    let mut span = Rref::new(field);
    for b in &basis {
        span.insert(&flatten(b));
    }
    let same_span = derivs.len() == basis.len() && derivs.iter().all(|d| span.contains(&flatten(d)));
    Ok(AutomorphismReport { degree: -shift, basis, derivations: derivs, same_span })
}
