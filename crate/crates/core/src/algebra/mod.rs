//! Graded algebras over a truncated operad, given by structure constants of
//! the binary generators; higher operations are evaluated through the
//! operad's binary decomposition.

mod exterior;
mod free;
mod lie;
mod tuples;

use std::fmt;
use std::sync::Arc;

use crate::error::{Check, Error, Result};
use crate::linalg::{GroundRing, LinearMap, SparseVec};
use crate::operad::{FinOperad, OperadElement, OperadKind};
use crate::perm;

pub use exterior::{exterior_power, ExteriorPower};
pub use exterior::increasing_tuples;
pub(crate) use exterior::{tensor_index, untensor};
pub use free::{extend_from_generators, free_algebra, symmetric_algebra, FreeAlgebra};
pub use lie::{jacobiator, lie_from_constants, LieAlgebraData};
pub use tuples::tuples_with_degree_at_most;

/// A degreewise finite graded algebra truncated at `max_degree`.
///
/// Basis vectors are numbered globally, degree by degree. Products whose
/// degree exceeds the truncation are not stored.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    operad: Arc<FinOperad>,
    degrees: Vec<usize>,
    offsets: Vec<usize>,
    labels: Vec<String>,
    tables: Vec<Vec<SparseVec>>,
    unit: Option<usize>,
    augmented: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraReport {
    pub max_total_degree: usize,
    pub composition: Check,
    pub equivariance: Check,
    pub degree: Check,
    pub unit: Check,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.composition.passed() && self.equivariance.passed() && self.degree.passed() && self.unit.passed()
    }
}

impl fmt::Display for AlgebraReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "total degree <= {}", self.max_total_degree)?;
        for (name, c) in [
            ("composition", &self.composition),
            ("equivariance", &self.equivariance),
            ("degree", &self.degree),
            ("unit", &self.unit),
        ] {
            write!(f, "{name}: {} ({} checked)", c.verdict(), c.checked)?;
            if let Some(w) = &c.witness {
                write!(f, " witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl GradedAlgebra {
    /// `components[d]` lists the basis labels of degree `d`; `tables[β]` holds
    /// the products `β(x_i, x_j)` at index `i · dim + j`.
    pub fn new(
        operad: Arc<FinOperad>,
        components: Vec<Vec<String>>,
        tables: Vec<Vec<SparseVec>>,
        unit: Option<usize>,
        augmented: bool,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Dim("an algebra needs at least degree 0".into()));
        }
        let mut degrees = Vec::new();
        let mut offsets = vec![0];
        let mut labels = Vec::new();
        for (d, c) in components.into_iter().enumerate() {
            degrees.extend(std::iter::repeat(d).take(c.len()));
            labels.extend(c);
            offsets.push(labels.len());
        }
        let dim = labels.len();
        if operad.max_arity() < 2 {
            return Err(Error::Arity("algebras need binary operations".into()));
        }
        if tables.len() != operad.dim(2) || tables.iter().any(|t| t.len() != dim * dim) {
            return Err(Error::Dim(format!("expected {} product tables of size {dim}x{dim}", operad.dim(2))));
        }
        if tables.iter().flatten().any(|v| v.max_index().is_some_and(|m| m >= dim)) {
            return Err(Error::Dim("product outside the basis".into()));
        }
        if let Some(u) = unit {
            if u >= dim || degrees[u] != 0 {
                return Err(Error::Degree("the unit must be a degree-0 basis vector".into()));
            }
        }
        Ok(GradedAlgebra { operad, degrees, offsets, labels, tables, unit, augmented })
    }

    /// Builds the tables of every binary basis operation from the table of
    /// generator 0, using `(s·β)(x, y) = β(y, x)`.
    pub fn from_product(
        operad: Arc<FinOperad>,
        components: Vec<Vec<String>>,
        product: Vec<SparseVec>,
        unit: Option<usize>,
        augmented: bool,
    ) -> Result<Self> {
        let ring = operad.ring();
        let dim: usize = components.iter().map(Vec::len).sum();
        if product.len() != dim * dim {
            return Err(Error::Dim(format!("product table must have {} entries", dim * dim)));
        }
        let swapped: Vec<SparseVec> = (0..dim * dim).map(|k| product[(k % dim) * dim + k / dim].clone()).collect();
        let d2 = operad.dim(2);
        let mut tables = vec![Vec::new(); d2];
        // express each basis element of O(2) through e_0 and s·e_0
        let e0 = SparseVec::unit(0);
        let se0 = operad.transposition(2, 0).apply(&e0);
        let span = crate::linalg::ExactMatrix::from_columns(ring, d2, &[e0, se0]);
        for (b, table) in tables.iter_mut().enumerate() {
            let coef = span
                .solve(&SparseVec::unit(b))
                .ok_or_else(|| Error::Operad("O(2) is not generated by one operation".into()))?;
            let (alpha, gamma) = (coef.get(0), coef.get(1));
            *table = (0..dim * dim)
                .map(|k| {
                    let mut v = product[k].scaled(ring, &alpha);
                    v.add_scaled(ring, &gamma, &swapped[k]);
                    v
                })
                .collect();
        }
        Self::new(operad, components, tables, unit, augmented)
    }

    pub fn operad(&self) -> &Arc<FinOperad> {
        &self.operad
    }

    pub fn ring(&self) -> GroundRing {
        self.operad.ring()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn max_degree(&self) -> usize {
        self.offsets.len() - 2
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn range(&self, d: usize) -> std::ops::Range<usize> {
        if d > self.max_degree() {
            return self.dim()..self.dim();
        }
        self.offsets[d]..self.offsets[d + 1]
    }

    pub fn component_rank(&self, d: usize) -> usize {
        self.range(d).len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..=self.max_degree()).map(|d| self.component_rank(d)).collect()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn components(&self) -> Vec<Vec<String>> {
        (0..=self.max_degree()).map(|d| self.labels[self.range(d)].to_vec()).collect()
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    pub fn tables(&self) -> &[Vec<SparseVec>] {
        &self.tables
    }

    /// `β(x_i, x_j)` for basis vectors.
    pub fn mul_basis(&self, beta: usize, i: usize, j: usize) -> &SparseVec {
        &self.tables[beta][i * self.dim() + j]
    }

    pub fn product(&self, beta: usize, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let ring = self.ring();
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(ring, &ring.mul(a, b), self.mul_basis(beta, i, j));
            }
        }
        out
    }

    /// The associative product (generator 0 of `O(2)`).
    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.product(0, x, y)
    }

    /// Highest degree present in `v`, if any.
    pub fn top_degree(&self, v: &SparseVec) -> Option<usize> {
        v.max_index().map(|i| self.degrees[i])
    }

    pub fn is_homogeneous(&self, v: &SparseVec, d: usize) -> bool {
        v.indices().all(|i| self.degrees[i] == d)
    }

    /// Evaluates an operation on elements.
    pub fn act(&self, e: &OperadElement, args: &[SparseVec]) -> Result<SparseVec> {
        if args.len() != e.arity {
            return Err(Error::Arity(format!("{} arguments for an arity-{} operation", args.len(), e.arity)));
        }
        let dec = self.operad.binary_decomposition()?;
        let ring = self.ring();
        let mut out = SparseVec::new();
        for (b, c) in e.coords.iter() {
            match e.arity {
                1 => out.add_scaled(ring, &ring.mul(c, &dec.unary[0]), &args[0]),
                2 => out.add_scaled(ring, c, &self.product(b, &args[0], &args[1])),
                n => {
                    for t in dec.of(n, b) {
                        let (p, q) = t.pair;
                        let mut inner = vec![self.product(t.generator, &args[p], &args[q])];
                        inner.extend((0..n).filter(|&k| k != p && k != q).map(|k| args[k].clone()));
                        let x = self.operad.basis_element(n - 1, t.outer);
                        let v = self.act(&x, &inner)?;
                        out.add_scaled(ring, &ring.mul(c, &t.coef), &v);
                    }
                }
            }
        }
        Ok(out)
    }

    fn act_basis(&self, e: &OperadElement, idx: &[usize]) -> SparseVec {
        let args: Vec<SparseVec> = idx.iter().map(|&i| SparseVec::unit(i)).collect();
        self.act(e, &args).expect("arity matches")
    }

    fn fmt_tuple(&self, idx: &[usize]) -> String {
        let names: Vec<&str> = idx.iter().map(|&i| self.labels[i].as_str()).collect();
        format!("({})", names.join(", "))
    }

    pub fn display(&self, v: &SparseVec) -> String {
        v.display_with(&self.labels)
    }

    /// Exhaustive verification of the algebra axioms on basis tuples of
    /// total degree at most `max_total_degree`.
    pub fn check(&self, max_total_degree: usize) -> AlgebraReport {
        let big = self.operad.max_arity();
        let d = max_total_degree.min(self.max_degree());
        let op = &*self.operad;
        let mut report = AlgebraReport {
            max_total_degree: d,
            composition: Check::default(),
            equivariance: Check::default(),
            degree: Check::default(),
            unit: Check::default(),
        };
        if let Err(e) = op.binary_decomposition() {
            report.composition.record(false, || e.to_string());
            return report;
        }
        for beta in 0..op.dim(2) {
            for i in 0..self.dim() {
                for j in 0..self.dim() {
                    let v = self.mul_basis(beta, i, j);
                    let deg = self.degrees[i] + self.degrees[j];
                    if deg > self.max_degree() {
                        report.degree.record(v.is_zero(), || format!("product beyond truncation at {}", self.fmt_tuple(&[i, j])));
                    } else {
                        report.degree.record(self.is_homogeneous(v, deg), || {
                            format!("{}{} = {} is not of degree {deg}", op.space(2).labels[beta], self.fmt_tuple(&[i, j]), self.display(v))
                        });
                    }
                }
            }
        }
        // composition square: act(f ∘_i g)(a) = act(f)(…, act(g)(a_i…), …)
        for m in 1..=big {
            for n in 1..=big + 1 - m {
                if m + n - 1 < 2 {
                    continue;
                }
                let tuples = tuples_with_degree_at_most(&self.degrees, m + n - 1, d);
                for f in 0..op.dim(m) {
                    for g in 0..op.dim(n) {
                        for i in 0..m {
                            let fe = op.basis_element(m, f);
                            let ge = op.basis_element(n, g);
                            let fg = op.partial_compose(&fe, i, &ge).expect("within arity");
                            for t in &tuples {
                                let lhs = self.act_basis(&fg, t);
                                let inner = self.act_basis(&ge, &t[i..i + n]);
                                let mut outer_args: Vec<SparseVec> = t[..i].iter().map(|&k| SparseVec::unit(k)).collect();
                                outer_args.push(inner);
                                outer_args.extend(t[i + n..].iter().map(|&k| SparseVec::unit(k)));
                                let rhs = self.act(&fe, &outer_args).expect("arity");
                                report.composition.record(lhs == rhs, || {
                                    format!(
                                        "{} ∘_{} {} on {}: {} vs {}",
                                        op.space(m).labels[f],
                                        i + 1,
                                        op.space(n).labels[g],
                                        self.fmt_tuple(t),
                                        self.display(&lhs),
                                        self.display(&rhs)
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
        // equivariance: act(s·f)(a) = act(f)(a ∘ s)
        for n in 2..=big {
            let tuples = tuples_with_degree_at_most(&self.degrees, n, d);
            for f in 0..op.dim(n) {
                let fe = op.basis_element(n, f);
                for k in 0..n - 1 {
                    let s = perm::transposition(n, k);
                    let sf = op.act(&s, &fe);
                    for t in &tuples {
                        let lhs = self.act_basis(&sf, t);
                        let permuted: Vec<usize> = s.iter().map(|&x| t[x]).collect();
                        let rhs = self.act_basis(&fe, &permuted);
                        report.equivariance.record(lhs == rhs, || {
                            format!("s_{}·{} on {}: {} vs {}", k + 1, op.space(n).labels[f], self.fmt_tuple(t), self.display(&lhs), self.display(&rhs))
                        });
                    }
                }
            }
        }
        if let Some(u) = self.unit {
            if !matches!(op.kind(), OperadKind::Com | OperadKind::Ass) {
                report.unit.record(false, || format!("unit laws are defined for com and ass, not {}", op.name()));
            }
            for n in 2..=big {
                let tuples = tuples_with_degree_at_most(&self.degrees, n - 1, d);
                for f in 0..op.dim(n) {
                    for slot in 0..n {
                        let Some(reduced) = op.remove_input(n, f, slot) else { continue };
                        let fe = op.basis_element(n, f);
                        for t in &tuples {
                            let mut full = t.clone();
                            full.insert(slot, u);
                            let lhs = self.act_basis(&fe, &full);
                            let rhs = self.act_basis(&reduced, t);
                            report.unit.record(lhs == rhs, || {
                                format!("{} with unit in input {} on {}: {} vs {}", op.space(n).labels[f], slot + 1, self.fmt_tuple(t), self.display(&lhs), self.display(&rhs))
                            });
                        }
                    }
                }
            }
        }
        report
    }

    /// Projection onto the positive-degree part, as a list of global indices.
    pub fn augmentation_ideal(&self) -> Vec<usize> {
        (self.offsets[1]..self.dim()).collect()
    }
}

/// A linear map between algebras that is checked against all products.
#[derive(Clone, Debug)]
pub struct AlgebraHom {
    pub source: Arc<GradedAlgebra>,
    pub target: Arc<GradedAlgebra>,
    pub map: LinearMap,
}

impl AlgebraHom {
    pub fn new(source: Arc<GradedAlgebra>, target: Arc<GradedAlgebra>, map: LinearMap) -> Result<Self> {
        if map.src_dim != source.dim() || map.dst_dim != target.dim() {
            return Err(Error::Dim("homomorphism matrix does not match the algebras".into()));
        }
        if source.operad.kind() != target.operad.kind() || source.operad.dim(2) != target.operad.dim(2) {
            return Err(Error::Setup("algebras over different operads".into()));
        }
        Ok(AlgebraHom { source, target, map })
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.map.apply(v)
    }

    /// Products of pairs and (when both sides are unital) the unit are
    /// preserved, wherever the images stay inside the target truncation.
    /// Higher operations are evaluated from binary ones on both sides, so
    /// this covers every arity.
    pub fn check(&self, max_total_degree: usize) -> Check {
        let (s, t) = (&*self.source, &*self.target);
        let mut c = Check::default();
        let tuples = tuples_with_degree_at_most(s.degrees(), 2, max_total_degree.min(s.max_degree()));
        for beta in 0..s.operad.dim(2) {
            for pair in &tuples {
                let (i, j) = (pair[0], pair[1]);
                let (fi, fj) = (&self.map.images[i], &self.map.images[j]);
                let top = t.top_degree(fi).unwrap_or(0) + t.top_degree(fj).unwrap_or(0);
                if top > t.max_degree() {
                    continue;
                }
                let lhs = self.map.apply(s.mul_basis(beta, i, j));
                let rhs = t.product(beta, fi, fj);
                c.record(lhs == rhs, || {
                    format!("{} on {}: {} vs {}", s.operad.space(2).labels[beta], s.fmt_tuple(pair), t.display(&lhs), t.display(&rhs))
                });
            }
        }
        if let (Some(u), Some(v)) = (s.unit, t.unit) {
            c.record(self.map.images[u] == SparseVec::unit(v), || "unit not preserved".into());
        }
        c
    }
}
