//! Modules over algebras over a truncated operad (with the model `Τ = O`),
//! the enveloping algebra, derivations and the representing module `I_A`.
//!
//! A module `M` over `A` is stored through the binary actions `β(a, m)` for
//! basis operations `β ∈ O(2)`; the actions `β(m, a)` follow from
//! equivariance and higher operations are evaluated through the binary
//! decomposition of the operad.

mod derivation;
mod enveloping;
mod ideal;
mod model;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{tuples_with_degree_at_most, AlgebraHom, AlgebraReport, GradedAlgebra, LieAlgebraData};
use crate::error::{Check, Error, Result};
use crate::linalg::{ExactMatrix, GroundRing, LinearMap, SparseVec};
use crate::operad::OperadElement;
use crate::perm;

pub use derivation::{
    check_derivation, check_derivations, derivations, derivations_in_window, representability_check, square_zero_extension,
    DegreeRepresentability, SquareZero,
};
pub use enveloping::{enveloping, free_module, EnvelopingAlgebra};
pub use ideal::{ideal_ia, IdealIA, RepresentabilityRanks};
pub use model::ModelData;

pub type ModuleReport = AlgebraReport;

/// Word-length style filtration of a module that is only known below
/// `max_level`: an action on a vector of level `max_level` is not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub levels: Vec<usize>,
    pub max_level: usize,
}

#[derive(Clone, Debug)]
pub struct AModule {
    algebra: Arc<GradedAlgebra>,
    labels: Vec<String>,
    degrees: Vec<i64>,
    top: i64,
    /// `left[β][a · dim + m] = β(a, m)`
    left: Vec<Vec<SparseVec>>,
    /// `right[β][a · dim + m] = β(m, a)`
    right: Vec<Vec<SparseVec>>,
    filtration: Option<Filtration>,
}

impl AModule {
    /// `left[β]` holds `β(a, m)` at `a · dim + m`. Components above `top`
    /// are treated as truncated away.
    pub fn new(
        algebra: Arc<GradedAlgebra>,
        labels: Vec<String>,
        degrees: Vec<i64>,
        top: i64,
        left: Vec<Vec<SparseVec>>,
    ) -> Result<Self> {
        let op = algebra.operad().clone();
        let ring = op.ring();
        let dim = labels.len();
        let na = algebra.dim();
        if degrees.len() != dim {
            return Err(Error::Dim(format!("{} degrees for {dim} basis vectors", degrees.len())));
        }
        if left.len() != op.dim(2) || left.iter().any(|t| t.len() != na * dim) {
            return Err(Error::Dim(format!("expected {} action tables of size {na}x{dim}", op.dim(2))));
        }
        if left.iter().flatten().any(|v| v.max_index().is_some_and(|m| m >= dim)) {
            return Err(Error::Dim("action value outside the module".into()));
        }
        let swap = op.transposition(2, 0);
        let right = (0..op.dim(2))
            .map(|b| {
                let sb = swap.images[b].clone();
                (0..na * dim)
                    .map(|k| {
                        let mut v = SparseVec::new();
                        for (g, c) in sb.iter() {
                            v.add_scaled(ring, c, &left[g][k]);
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Ok(AModule { algebra, labels, degrees, top, left, right, filtration: None })
    }

    /// Builds all tables from the actions of generator 0 of `O(2)` with the
    /// module in the second (`first_a`) and first (`first_m`) input.
    pub fn from_action(
        algebra: Arc<GradedAlgebra>,
        labels: Vec<String>,
        degrees: Vec<i64>,
        top: i64,
        first_a: Vec<SparseVec>,
        first_m: Vec<SparseVec>,
    ) -> Result<Self> {
        let op = algebra.operad().clone();
        let ring = op.ring();
        let n = algebra.dim() * labels.len();
        if first_a.len() != n || first_m.len() != n {
            return Err(Error::Dim(format!("action tables must have {n} entries")));
        }
        let d2 = op.dim(2);
        let e0 = SparseVec::unit(0);
        let se0 = op.transposition(2, 0).apply(&e0);
        let span = ExactMatrix::from_columns(ring, d2, &[e0, se0]);
        let mut left = Vec::with_capacity(d2);
        for b in 0..d2 {
            let coef = span
                .solve(&SparseVec::unit(b))
                .ok_or_else(|| Error::Operad("O(2) is not generated by one operation".into()))?;
            let (alpha, gamma) = (coef.get(0), coef.get(1));
            // β = α e0 + γ s·e0, and (s·e0)(a, m) = e0(m, a)
            left.push(
                (0..n)
                    .map(|k| {
                        let mut v = first_a[k].scaled(ring, &alpha);
                        v.add_scaled(ring, &gamma, &first_m[k]);
                        v
                    })
                    .collect(),
            );
        }
        Self::new(algebra, labels, degrees, top, left)
    }

    /// `A` acting on itself.
    pub fn regular(algebra: Arc<GradedAlgebra>) -> Result<Self> {
        let labels = algebra.labels().to_vec();
        let degrees = algebra.degrees().iter().map(|&d| d as i64).collect();
        let top = algebra.max_degree() as i64;
        let left = algebra.tables().to_vec();
        Self::new(algebra, labels, degrees, top, left)
    }

    /// The augmentation ideal `A_+` as a submodule of `A`.
    pub fn augmentation_ideal(algebra: Arc<GradedAlgebra>) -> Result<Self> {
        let first = algebra.range(1).start;
        let dim = algebra.dim() - first;
        let na = algebra.dim();
        let labels = algebra.labels()[first..].to_vec();
        let degrees = algebra.degrees()[first..].iter().map(|&d| d as i64).collect();
        let mut left = Vec::new();
        for table in algebra.tables() {
            let mut t = Vec::with_capacity(na * dim);
            for a in 0..na {
                for m in 0..dim {
                    let v = &table[a * na + first + m];
                    if v.indices().any(|i| i < first) {
                        return Err(Error::Module("positive degrees do not form an ideal".into()));
                    }
                    t.push(v.map_indices(algebra.ring(), |i| Some(i - first)));
                }
            }
            left.push(t);
        }
        let top = algebra.max_degree() as i64;
        Self::new(algebra, labels, degrees, top, left)
    }

    /// The module on which the algebra acts through its augmentation: the
    /// unit acts as the identity (when there is one) and every other basis
    /// vector acts by zero.
    pub fn trivial(algebra: Arc<GradedAlgebra>, labels: Vec<String>, degrees: Vec<i64>, top: i64) -> Result<Self> {
        let op = algebra.operad().clone();
        let ring = op.ring();
        let dim = labels.len();
        let na = algebra.dim();
        let mut left = vec![vec![SparseVec::new(); na * dim]; op.dim(2)];
        if let Some(u) = algebra.unit() {
            let unary = op.binary_decomposition()?.unary[0].clone();
            for (b, table) in left.iter_mut().enumerate() {
                let e = op
                    .remove_input(2, b, 0)
                    .ok_or_else(|| Error::Operad(format!("unit insertion is not defined for {}", op.name())))?;
                let c = ring.mul(&e.coords.get(0), &unary);
                for m in 0..dim {
                    table[u * dim + m] = SparseVec::unit(m).scaled(ring, &c);
                }
            }
        }
        Self::new(algebra, labels, degrees, top, left)
    }

    /// A representation `x_a ↦ ρ_a` of a bracket, as a module over its Lie
    /// operad algebra (concentrated in degree 0).
    pub fn lie_representation(data: &LieAlgebraData, labels: Vec<String>, rho: &[LinearMap]) -> Result<Self> {
        let algebra = Arc::new(data.to_algebra()?);
        let ring = data.ring();
        let dim = labels.len();
        if rho.len() != data.rank() || rho.iter().any(|r| r.src_dim != dim || r.dst_dim != dim) {
            return Err(Error::Dim(format!("need {} endomorphisms of rank {dim}", data.rank())));
        }
        let mut first_a = Vec::new();
        let mut first_m = Vec::new();
        for r in rho {
            for m in 0..dim {
                first_a.push(r.images[m].clone());
                first_m.push(r.images[m].neg(ring));
            }
        }
        Self::from_action(algebra, labels, vec![0; dim], 0, first_a, first_m)
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn ring(&self) -> GroundRing {
        self.algebra.ring()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self, m: usize) -> i64 {
        self.degrees[m]
    }

    /// Highest degree that is represented.
    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn filtration(&self) -> Option<&Filtration> {
        self.filtration.as_ref()
    }

    pub fn with_filtration(mut self, filtration: Filtration) -> Result<Self> {
        if filtration.levels.len() != self.dim() {
            return Err(Error::Dim("one level per basis vector".into()));
        }
        self.filtration = Some(filtration);
        Ok(self)
    }

    /// Basis vectors of degree `d`.
    pub fn basis_of_degree(&self, d: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&m| self.degrees[m] == d).collect()
    }

    pub fn rank_in_degree(&self, d: i64) -> usize {
        self.degrees.iter().filter(|&&x| x == d).count()
    }

    /// `β(a, m)` on basis vectors.
    pub fn act_left(&self, beta: usize, a: usize, m: usize) -> &SparseVec {
        &self.left[beta][a * self.dim() + m]
    }

    /// `β(m, a)` on basis vectors.
    pub fn act_right(&self, beta: usize, a: usize, m: usize) -> &SparseVec {
        &self.right[beta][a * self.dim() + m]
    }

    pub fn left_tables(&self) -> &[Vec<SparseVec>] {
        &self.left
    }

    fn binary(&self, beta: usize, a: &SparseVec, m: &SparseVec, m_first: bool) -> SparseVec {
        let ring = self.ring();
        let table = if m_first { &self.right[beta] } else { &self.left[beta] };
        let mut out = SparseVec::new();
        for (i, x) in a.iter() {
            for (j, y) in m.iter() {
                out.add_scaled(ring, &ring.mul(x, y), &table[i * self.dim() + j]);
            }
        }
        out
    }

    /// Whether the action of an algebra element of degree `deg_a` on basis
    /// vector `m` is inside the represented range.
    pub fn is_exact(&self, deg_a: usize, m: usize) -> bool {
        match &self.filtration {
            Some(f) => f.levels[m] < f.max_level,
            None => self.degrees[m] + deg_a as i64 <= self.top,
        }
    }

    /// Evaluates `e` on the algebra arguments `a_args` with `m` inserted at
    /// input `slot`.
    pub fn eval(&self, e: &OperadElement, a_args: &[SparseVec], slot: usize, m: &SparseVec) -> Result<SparseVec> {
        if a_args.len() + 1 != e.arity || slot >= e.arity {
            return Err(Error::Arity(format!("{} arguments for an arity-{} operation", a_args.len() + 1, e.arity)));
        }
        let op = self.algebra.operad();
        let dec = op.binary_decomposition()?;
        let ring = self.ring();
        let mut out = SparseVec::new();
        for (b, c) in e.coords.iter() {
            match e.arity {
                1 => out.add_scaled(ring, &ring.mul(c, &dec.unary[0]), m),
                2 => out.add_scaled(ring, c, &self.binary(b, &a_args[0], m, slot == 0)),
                n => {
                    // position k of the full argument list, k ≠ slot, is a_args[k − (k > slot)]
                    let arg = |k: usize| &a_args[if k > slot { k - 1 } else { k }];
                    for t in dec.of(n, b) {
                        let (p, q) = t.pair;
                        let rest: Vec<usize> = (0..n).filter(|&k| k != p && k != q).collect();
                        let x = op.basis_element(n - 1, t.outer);
                        let v = if p == slot || q == slot {
                            let other = if p == slot { q } else { p };
                            let inner = self.binary(t.generator, arg(other), m, p == slot);
                            let outer_args: Vec<SparseVec> = rest.iter().map(|&k| arg(k).clone()).collect();
                            self.eval(&x, &outer_args, 0, &inner)?
                        } else {
                            let inner = self.algebra.product(t.generator, arg(p), arg(q));
                            let mut outer_args = vec![inner];
                            outer_args.extend(rest.iter().filter(|&&k| k != slot).map(|&k| arg(k).clone()));
                            let new_slot = 1 + rest.iter().filter(|&&k| k < slot).count();
                            self.eval(&x, &outer_args, new_slot, m)?
                        };
                        out.add_scaled(ring, &ring.mul(c, &t.coef), &v);
                    }
                }
            }
        }
        Ok(out)
    }

    fn eval_basis(&self, e: &OperadElement, a_idx: &[usize], slot: usize, m: usize) -> SparseVec {
        let args: Vec<SparseVec> = a_idx.iter().map(|&i| SparseVec::unit(i)).collect();
        self.eval(e, &args, slot, &SparseVec::unit(m)).expect("arity matches")
    }

    pub fn display(&self, v: &SparseVec) -> String {
        v.display_with(&self.labels)
    }

    fn fmt_args(&self, a_idx: &[usize], slot: usize, m: usize) -> String {
        let mut names: Vec<&str> = a_idx.iter().map(|&i| self.algebra.labels()[i].as_str()).collect();
        names.insert(slot, &self.labels[m]);
        format!("({})", names.join(", "))
    }

    /// Highest level reachable from `m` by `k` actions is within the
    /// filtration bound.
    fn within_filtration(&self, m: usize, k: usize) -> bool {
        self.filtration.as_ref().is_none_or(|f| f.levels[m] + k <= f.max_level)
    }

    /// Exhaustive check of the module axioms on algebra tuples of total
    /// degree at most `max_total_degree`, with the module argument in every
    /// position.
    pub fn check(&self, max_total_degree: usize) -> ModuleReport {
        let a = &*self.algebra;
        let op = &**a.operad();
        let big = op.max_arity();
        let d = max_total_degree.min(a.max_degree());
        let mut report = ModuleReport {
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
            for x in 0..a.dim() {
                for m in 0..self.dim() {
                    let v = self.act_left(beta, x, m);
                    let deg = a.degree(x) as i64 + self.degrees[m];
                    report.degree.record(
                        if deg > self.top { v.is_zero() } else { v.indices().all(|i| self.degrees[i] == deg) },
                        || format!("{}{} = {} is not of degree {deg}", op.space(2).labels[beta], self.fmt_args(&[x], 1, m), self.display(v)),
                    );
                }
            }
        }
        for mm in 1..=big {
            for n in 1..=big + 1 - mm {
                let arity = mm + n - 1;
                if arity < 2 {
                    continue;
                }
                let tuples = tuples_with_degree_at_most(a.degrees(), arity - 1, d);
                for f in 0..op.dim(mm) {
                    let fe = op.basis_element(mm, f);
                    for g in 0..op.dim(n) {
                        let ge = op.basis_element(n, g);
                        for i in 0..mm {
                            let fg = op.partial_compose(&fe, i, &ge).expect("within arity");
                            for slot in 0..arity {
                                for t in &tuples {
                                    for m in 0..self.dim() {
                                        if !self.within_filtration(m, arity - 1) {
                                            continue;
                                        }
                                        let lhs = self.eval_basis(&fg, t, slot, m);
                                        let rhs = self.composed(&fe, &ge, i, t, slot, m);
                                        report.composition.record(lhs == rhs, || {
                                            format!(
                                                "{} ∘_{} {} on {}: {} vs {}",
                                                op.space(mm).labels[f],
                                                i + 1,
                                                op.space(n).labels[g],
                                                self.fmt_args(t, slot, m),
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
            }
        }
        for n in 2..=big {
            let tuples = tuples_with_degree_at_most(a.degrees(), n - 1, d);
            for f in 0..op.dim(n) {
                let fe = op.basis_element(n, f);
                for k in 0..n - 1 {
                    let s = perm::transposition(n, k);
                    let sf = op.act(&s, &fe);
                    for slot in 0..n {
                        for t in &tuples {
                            for m in 0..self.dim() {
                                if !self.within_filtration(m, n - 1) {
                                    continue;
                                }
                                let lhs = self.eval_basis(&sf, t, slot, m);
                                // (s·f)(b) = f(b_{s(0)}, …): the module argument moves to s(slot)
                                let mut full: Vec<Option<usize>> = t.iter().map(|&x| Some(x)).collect();
                                full.insert(slot, None);
                                let permuted: Vec<Option<usize>> = s.iter().map(|&x| full[x]).collect();
                                let new_slot = permuted.iter().position(Option::is_none).unwrap();
                                let rest: Vec<usize> = permuted.into_iter().flatten().collect();
                                let rhs = self.eval_basis(&fe, &rest, new_slot, m);
                                report.equivariance.record(lhs == rhs, || {
                                    format!(
                                        "s_{}·{} on {}: {} vs {}",
                                        k + 1,
                                        op.space(n).labels[f],
                                        self.fmt_args(t, slot, m),
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
        if let Some(u) = a.unit() {
            for n in 2..=big {
                let tuples = tuples_with_degree_at_most(a.degrees(), n - 2, d);
                for f in 0..op.dim(n) {
                    let fe = op.basis_element(n, f);
                    for unit_slot in 0..n {
                        let Some(reduced) = op.remove_input(n, f, unit_slot) else { continue };
                        for slot in (0..n).filter(|&s| s != unit_slot) {
                            for t in &tuples {
                                for m in 0..self.dim() {
                                    if !self.within_filtration(m, n - 1) {
                                        continue;
                                    }
                                    // positions among the algebra arguments
                                    let (ua, sa) = if slot < unit_slot { (unit_slot - 1, slot) } else { (unit_slot, slot - 1) };
                                    let mut full = t.clone();
                                    full.insert(ua, u);
                                    let lhs = self.eval_basis(&fe, &full, slot, m);
                                    let rhs = self.eval_basis(&reduced, t, sa, m);
                                    report.unit.record(lhs == rhs, || {
                                        format!(
                                            "{} with unit in input {} on {}: {} vs {}",
                                            op.space(n).labels[f],
                                            unit_slot + 1,
                                            self.fmt_args(&full, slot, m),
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
        }
        report
    }

    /// `f(…, g(…), …)` with `g` fed into input `i` of `f`, on the argument
    /// list `t` with the module vector `m` at position `slot`.
    fn composed(&self, fe: &OperadElement, ge: &OperadElement, i: usize, t: &[usize], slot: usize, m: usize) -> SparseVec {
        let a = &*self.algebra;
        let n = ge.arity;
        let unit = |k: usize| SparseVec::unit(k);
        // argument k of the full list (k ≠ slot)
        let arg = |k: usize| t[if k > slot { k - 1 } else { k }];
        if (i..i + n).contains(&slot) {
            let inner_a: Vec<SparseVec> = (i..i + n).filter(|&k| k != slot).map(|k| unit(arg(k))).collect();
            let inner = self.eval(ge, &inner_a, slot - i, &unit(m)).expect("arity");
            let outer_a: Vec<SparseVec> = (0..i).chain(i + n..t.len() + 1).map(|k| unit(arg(k))).collect();
            self.eval(fe, &outer_a, i, &inner).expect("arity")
        } else {
            let inner_a: Vec<SparseVec> = (i..i + n).map(|k| unit(arg(k))).collect();
            let inner = a.act(ge, &inner_a).expect("arity");
            let mut outer_a: Vec<SparseVec> = Vec::new();
            let mut outer_slot = 0;
            let mut pos = 0;
            for k in 0..=t.len() {
                if k == i {
                    outer_a.push(inner.clone());
                    pos += 1;
                }
                if (i..i + n).contains(&k) {
                    continue;
                }
                if k == slot {
                    outer_slot = pos;
                } else {
                    outer_a.push(unit(arg(k)));
                }
                pos += 1;
            }
            self.eval(fe, &outer_a, outer_slot, &unit(m)).expect("arity")
        }
    }

    /// The shift `T^k`: same actions, degrees raised by `k`.
    pub fn shift(&self, k: i64) -> AModule {
        let mut out = self.clone();
        for d in &mut out.degrees {
            *d += k;
        }
        out.top += k;
        out
    }

    /// The submodule spanned by the basis vectors of degree at least `d`
    /// (a submodule because the algebra is nonnegatively graded).
    pub fn truncate_below(&self, d: i64) -> Result<AModule> {
        let keep: Vec<usize> = (0..self.dim()).filter(|&m| self.degrees[m] >= d).collect();
        self.restrict_basis(&keep)
    }

    /// The quotient `M / M_{>d}` (a quotient module because the algebra is
    /// nonnegatively graded).
    pub fn truncate_above(&self, d: i64) -> Result<AModule> {
        let ring = self.ring();
        let keep: Vec<usize> = (0..self.dim()).filter(|&m| self.degrees[m] <= d).collect();
        let mut pos = vec![usize::MAX; self.dim()];
        for (k, &m) in keep.iter().enumerate() {
            pos[m] = k;
        }
        let na = self.algebra.dim();
        let left = self
            .left
            .iter()
            .map(|table| {
                (0..na)
                    .flat_map(|a| keep.iter().map(move |&m| (a, m)))
                    .map(|(a, m)| table[a * self.dim() + m].map_indices(ring, |i| (pos[i] != usize::MAX).then_some(pos[i])))
                    .collect()
            })
            .collect();
        let labels = keep.iter().map(|&m| self.labels[m].clone()).collect();
        let degrees = keep.iter().map(|&m| self.degrees[m]).collect();
        let mut out = Self::new(self.algebra.clone(), labels, degrees, self.top.min(d), left)?;
        if let Some(f) = &self.filtration {
            out.filtration = Some(Filtration { levels: keep.iter().map(|&m| f.levels[m]).collect(), max_level: f.max_level });
        }
        Ok(out)
    }

    pub(crate) fn restrict_basis(&self, keep: &[usize]) -> Result<AModule> {
        let ring = self.ring();
        let mut pos = vec![usize::MAX; self.dim()];
        for (k, &m) in keep.iter().enumerate() {
            pos[m] = k;
        }
        let na = self.algebra.dim();
        let mut left = Vec::new();
        for table in &self.left {
            let mut t = Vec::with_capacity(na * keep.len());
            for a in 0..na {
                for &m in keep {
                    let v = &table[a * self.dim() + m];
                    if v.indices().any(|i| pos[i] == usize::MAX) {
                        return Err(Error::Module("the chosen basis vectors do not span a submodule".into()));
                    }
                    t.push(v.map_indices(ring, |i| Some(pos[i])));
                }
            }
            left.push(t);
        }
        let labels = keep.iter().map(|&m| self.labels[m].clone()).collect();
        let degrees = keep.iter().map(|&m| self.degrees[m]).collect();
        let mut out = Self::new(self.algebra.clone(), labels, degrees, self.top, left)?;
        if let Some(f) = &self.filtration {
            out.filtration = Some(Filtration { levels: keep.iter().map(|&m| f.levels[m]).collect(), max_level: f.max_level });
        }
        Ok(out)
    }

    /// Restriction of scalars along `hom: B → A`.
    pub fn restrict(&self, hom: &AlgebraHom) -> Result<AModule> {
        if !Arc::ptr_eq(&hom.target, &self.algebra) && hom.target.labels() != self.algebra.labels() {
            return Err(Error::Setup("homomorphism does not land in the module's algebra".into()));
        }
        let ring = self.ring();
        let nb = hom.source.dim();
        let dim = self.dim();
        let left = self
            .left
            .iter()
            .map(|table| {
                let mut t = Vec::with_capacity(nb * dim);
                for b in 0..nb {
                    for m in 0..dim {
                        let mut v = SparseVec::new();
                        for (a, c) in hom.map.images[b].iter() {
                            v.add_scaled(ring, c, &table[a * dim + m]);
                        }
                        t.push(v);
                    }
                }
                t
            })
            .collect();
        let mut out = Self::new(hom.source.clone(), self.labels.clone(), self.degrees.clone(), self.top, left)?;
        out.filtration = self.filtration.clone();
        Ok(out)
    }

    /// Whether `f: self → other` commutes with the binary actions, wherever
    /// the source product is represented.
    pub fn is_hom(&self, other: &AModule, f: &LinearMap) -> Check {
        let mut c = Check::default();
        let a = &*self.algebra;
        for beta in 0..a.operad().dim(2) {
            for x in 0..a.dim() {
                for u in 0..self.dim() {
                    if !self.is_exact(a.degree(x), u) {
                        continue;
                    }
                    let lhs = f.apply(self.act_left(beta, x, u));
                    let rhs = other.binary(beta, &SparseVec::unit(x), &f.images[u], false);
                    c.record(lhs == rhs, || {
                        format!("{} on ({}, {}): {} vs {}", a.operad().space(2).labels[beta], a.labels()[x], self.labels[u], other.display(&lhs), other.display(&rhs))
                    });
                }
            }
        }
        c
    }

    /// Basis of the module homomorphisms `self → other` raising degree by
    /// `j` (all degrees when `j` is `None`). Constraints are imposed only
    /// where the source action is represented and the target degree is
    /// inside `other`'s range.
    pub fn homs_to(&self, other: &AModule, j: Option<i64>) -> Vec<LinearMap> {
        let ring = self.ring();
        let a = &*self.algebra;
        let fits = |u: usize, v: usize| j.is_none_or(|j| other.degrees[v] == self.degrees[u] + j);
        let mut unknown = BTreeMap::new();
        let mut cols = Vec::new();
        for u in 0..self.dim() {
            for v in 0..other.dim() {
                if fits(u, v) {
                    unknown.insert((u, v), cols.len());
                    cols.push((u, v));
                }
            }
        }
        let mut rows = Vec::new();
        for beta in 0..a.operad().dim(2) {
            for x in 0..a.dim() {
                for u in 0..self.dim() {
                    if !self.is_exact(a.degree(x), u) {
                        continue;
                    }
                    let mut eq: BTreeMap<usize, SparseVec> = BTreeMap::new();
                    // ψ(β(x, u))
                    for (u2, c) in self.act_left(beta, x, u).iter() {
                        for v in 0..other.dim() {
                            if let Some(&col) = unknown.get(&(u2, v)) {
                                eq.entry(v).or_default().add_at(ring, col, c);
                            }
                        }
                    }
                    // − β(x, ψ(u))
                    for v in 0..other.dim() {
                        if let Some(&col) = unknown.get(&(u, v)) {
                            for (w, c) in other.act_left(beta, x, v).iter() {
                                eq.entry(w).or_default().add_at(ring, col, &ring.neg(c));
                            }
                        }
                    }
                    let target_deg = self.degrees[u] + a.degree(x) as i64 + j.unwrap_or(0);
                    if j.is_some() && target_deg > other.top {
                        continue;
                    }
                    rows.extend(eq.into_values().filter(|r| !r.is_zero()));
                }
            }
        }
        solutions_to_maps(ring, &rows, &cols, self.dim(), other.dim())
    }
}

/// Kernel of the constraint rows over the unknowns `(source, target)`,
/// returned as linear maps.
pub(crate) fn solutions_to_maps(
    ring: GroundRing,
    rows: &[SparseVec],
    cols: &[(usize, usize)],
    src_dim: usize,
    dst_dim: usize,
) -> Vec<LinearMap> {
    let m = ExactMatrix::new(ring, rows.len(), cols.len(), rows.to_vec());
    m.kernel_basis()
        .into_iter()
        .map(|k| {
            let mut images = vec![SparseVec::new(); src_dim];
            for (col, c) in k.iter() {
                let (u, v) = cols[col];
                images[u].add_at(ring, v, c);
            }
            LinearMap::from_images(ring, dst_dim, images)
        })
        .collect()
}
