//! The enveloping algebra `P_A`: operators `m ↦ ρ(m, a_1, …, a_i)` with
//! `ρ ∈ O(i+1)` and the module in input 0, i.e. the coinvariants
//! `F'_i = (O(i+1) ⊗ A^{⊗i})_{S_i}`, modulo the identifications of an
//! operation applied to algebra inputs with its value in `A`.
//!
//! Word length `i` is not preserved by the relations, so `P_A` is filtered by
//! it. Everything is computed for word lengths up to `max_length`; products
//! are stored when the levels of the factors add up to at most `max_length`.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{tensor_index, tuples_with_degree_at_most, untensor, GradedAlgebra};
use crate::error::{Check, Error, Result};
use crate::linalg::{coinvariants, quotient, BasedModule, LinearMap, Quotient, Scalar, SparseVec};
use crate::operad::{FinOperad, OperadKind};

use super::{AModule, Filtration};

/// A term `c · [ρ; a_1, …, a_i]` of an operator representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorTerm {
    pub coef: Scalar,
    pub operation: usize,
    pub inputs: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct EnvelopingAlgebra {
    algebra: Arc<GradedAlgebra>,
    max_length: usize,
    /// Rank of `F'_i` for each word length, before the relations.
    pub word_ranks: Vec<usize>,
    pub torsion: Vec<BigInt>,
    labels: Vec<String>,
    levels: Vec<usize>,
    degrees: Vec<usize>,
    reps: Vec<Vec<OperatorTerm>>,
    unit: usize,
    table: Vec<Option<SparseVec>>,
    word_space: WordSpace,
}

/// `F' = ⊕_i F'_i` with its coinvariant presentations and the quotient onto
/// `P_A`.
#[derive(Clone, Debug)]
struct WordSpace {
    presentations: Vec<Quotient>,
    offsets: Vec<usize>,
    relations: Quotient,
    r: usize,
}

impl WordSpace {
    fn ambient_project(&self, ring: crate::linalg::GroundRing, i: usize, v: &SparseVec) -> SparseVec {
        let off = self.offsets[i];
        self.presentations[i].project(v).map_indices(ring, |k| Some(off + k))
    }
}

fn marked_presentation(op: &FinOperad, r: usize, i: usize) -> Result<Quotient> {
    let ring = op.ring();
    let ri = r.pow(i as u32);
    let dim = op.dim(i + 1) * ri;
    let gens: Vec<LinearMap> = (1..i)
        .map(|k| {
            let s = op.transposition(i + 1, k);
            let images = (0..dim)
                .map(|idx| {
                    let mut t = untensor(r, i, idx % ri);
                    t.swap(k - 1, k);
                    let tidx = tensor_index(r, &t);
                    s.images[idx / ri].map_indices(ring, |sig| Some(sig * ri + tidx))
                })
                .collect();
            LinearMap::from_images(ring, dim, images)
        })
        .collect();
    Ok(coinvariants(ring, dim, &gens)?)
}

/// Ambient vector `Σ c_ρ [ρ; a]` of `O(n+1) ⊗ A^{⊗n}` for an operation
/// `coords` and a tuple of algebra vectors, expanded multilinearly.
fn ambient(ring: crate::linalg::GroundRing, r: usize, coords: &SparseVec, args: &[SparseVec]) -> SparseVec {
    let n = args.len();
    let rn = r.pow(n as u32);
    let mut tensors = vec![(ring.one(), 0usize)];
    for a in args {
        let mut next = Vec::new();
        for (c, idx) in &tensors {
            for (k, x) in a.iter() {
                next.push((ring.mul(c, x), idx * r + k));
            }
        }
        tensors = next;
    }
    let mut out = SparseVec::new();
    for (rho, c) in coords.iter() {
        for (t, idx) in &tensors {
            out.add_at(ring, rho * rn + idx, &ring.mul(c, t));
        }
    }
    out
}

/// Builds `P_A` for word lengths up to `max_length`.
pub fn enveloping(algebra: Arc<GradedAlgebra>, max_length: usize) -> Result<EnvelopingAlgebra> {
    let op = algebra.operad().clone();
    let ring = op.ring();
    if max_length + 1 > op.max_arity() {
        return Err(Error::Trunc(format!(
            "word length {max_length} needs operations of arity {}, operad stops at {}",
            max_length + 1,
            op.max_arity()
        )));
    }
    let r = algebra.dim();
    let presentations = (0..=max_length).map(|i| marked_presentation(&op, r, i)).collect::<Result<Vec<_>>>()?;
    let mut offsets = vec![0];
    for q in &presentations {
        offsets.push(offsets.last().unwrap() + q.rank);
    }
    let total = *offsets.last().unwrap();
    let word_ranks: Vec<usize> = presentations.iter().map(|q| q.rank).collect();
    let project = |i: usize, v: &SparseVec| -> SparseVec {
        let off = offsets[i];
        presentations[i].project(v).map_indices(ring, |k| Some(off + k))
    };
    let all_degrees: Vec<usize> = algebra.degrees().to_vec();
    let mut relations = Vec::new();
    // an operation fed only by algebra inputs may be evaluated in A
    for m in 1..=max_length {
        for n in 2..=max_length + 1 - m {
            let len = m + n - 1;
            let tuples = tuples_with_degree_at_most(&all_degrees, len, usize::MAX / 2);
            for x in 0..op.dim(m + 1) {
                let xe = op.basis_element(m + 1, x);
                for f in 0..op.dim(n) {
                    let fe = op.basis_element(n, f);
                    for i in 1..=m {
                        let comp = op.partial_compose(&xe, i, &fe)?;
                        for t in &tuples {
                            let args: Vec<SparseVec> = t.iter().map(|&k| SparseVec::unit(k)).collect();
                            let mut rel = project(len, &ambient(ring, r, &comp.coords, &args));
                            let value = algebra.act(&fe, &args[i - 1..i - 1 + n])?;
                            let mut short: Vec<SparseVec> = args[..i - 1].to_vec();
                            short.push(value);
                            short.extend(args[i - 1 + n..].iter().cloned());
                            rel.add_scaled(ring, &ring.from_int(-1), &project(m, &ambient(ring, r, &xe.coords, &short)));
                            if !rel.is_zero() {
                                relations.push(rel);
                            }
                        }
                    }
                }
            }
        }
    }
    // the unit of A acts as the identity
    if let (Some(u), true) = (algebra.unit(), op.is_unital() && matches!(op.kind(), OperadKind::Com | OperadKind::Ass)) {
        for i in 1..=max_length {
            let tuples = tuples_with_degree_at_most(&all_degrees, i - 1, usize::MAX / 2);
            for e in 0..op.dim(i + 1) {
                for k in 1..=i {
                    let reduced = op.remove_input(i + 1, e, k).expect("unital com or ass");
                    for t in &tuples {
                        let mut full: Vec<SparseVec> = t.iter().map(|&x| SparseVec::unit(x)).collect();
                        let short = full.clone();
                        full.insert(k - 1, SparseVec::unit(u));
                        let mut rel = project(i, &ambient(ring, r, &SparseVec::unit(e), &full));
                        rel.add_scaled(ring, &ring.from_int(-1), &project(i - 1, &ambient(ring, r, &reduced.coords, &short)));
                        if !rel.is_zero() {
                            relations.push(rel);
                        }
                    }
                }
            }
        }
    }
    let rel_quotient = quotient(ring, total, &relations)?;
    let length_of = |g: usize| (0..=max_length).find(|&i| g < offsets[i + 1]).unwrap();
    let dim = rel_quotient.rank;
    let mut reps = Vec::with_capacity(dim);
    let mut levels = Vec::with_capacity(dim);
    let mut degrees = Vec::with_capacity(dim);
    let mut labels = Vec::with_capacity(dim);
    for p in 0..dim {
        let lifted = &rel_quotient.section.images[p];
        let mut terms = Vec::new();
        for (g, c) in lifted.iter() {
            let i = length_of(g);
            let ri = r.pow(i as u32);
            for (idx, d) in presentations[i].section.images[g - offsets[i]].iter() {
                terms.push(OperatorTerm { coef: ring.mul(c, d), operation: idx / ri, inputs: untensor(r, i, idx % ri) });
            }
        }
        levels.push(terms.iter().map(|t| t.inputs.len()).max().unwrap_or(0));
        degrees.push(terms.iter().map(|t| t.inputs.iter().map(|&a| algebra.degree(a)).sum()).max().unwrap_or(0));
        labels.push(operator_label(&op, &algebra, &terms));
        reps.push(terms);
    }
    let unit_vec = rel_quotient.project(&SparseVec::unit(0));
    let unit = match unit_vec.leading() {
        Some((k, c)) if unit_vec.nnz() == 1 && *c == ring.one() => k,
        _ => return Err(Error::Setup("the identity operator is not a basis vector of P_A".into())),
    };
    let mut env = EnvelopingAlgebra {
        algebra,
        max_length,
        word_ranks,
        torsion: rel_quotient.torsion.clone(),
        labels,
        levels,
        degrees,
        reps,
        unit,
        table: Vec::new(),
        word_space: WordSpace { presentations, offsets, relations: rel_quotient, r },
    };
    let mut table = Vec::with_capacity(dim * dim);
    for p in 0..dim {
        for q in 0..dim {
            table.push(if env.levels[p] + env.levels[q] <= max_length { Some(env.compose_reps(p, q)?) } else { None });
        }
    }
    env.table = table;
    Ok(env)
}

fn operator_label(op: &FinOperad, algebra: &GradedAlgebra, terms: &[OperatorTerm]) -> String {
    match terms {
        [t] if t.coef == op.ring().one() => {
            if t.inputs.is_empty() {
                "1".to_string()
            } else {
                let args: Vec<&str> = t.inputs.iter().map(|&a| algebra.labels()[a].as_str()).collect();
                format!("{}(·,{})", op.space(t.inputs.len() + 1).labels[t.operation], args.join(","))
            }
        }
        _ => format!("p{}", terms.len()),
    }
}

impl EnvelopingAlgebra {
    fn compose_reps(&self, p: usize, q: usize) -> Result<SparseVec> {
        let op = self.algebra.operad();
        let ring = op.ring();
        let r = self.word_space.r;
        let mut out = SparseVec::new();
        for s in &self.reps[p] {
            let i = s.inputs.len();
            let se = op.basis_element(i + 1, s.operation);
            for t in &self.reps[q] {
                let j = t.inputs.len();
                let comp = op.partial_compose(&se, 0, &op.basis_element(j + 1, t.operation))?;
                let mut inputs = t.inputs.clone();
                inputs.extend(&s.inputs);
                let idx = tensor_index(r, &inputs);
                let rn = r.pow((i + j) as u32);
                let mut amb = SparseVec::new();
                for (rho, c) in comp.coords.iter() {
                    amb.add_at(ring, rho * rn + idx, c);
                }
                let c = ring.mul(&s.coef, &t.coef);
                out.add_scaled(ring, &c, &self.word_space.ambient_project(ring, i + j, &amb));
            }
        }
        Ok(self.word_space.relations.project(&out))
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    /// Internal degree (sum of the degrees of the algebra inputs).
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn representative(&self, p: usize) -> &[OperatorTerm] {
        &self.reps[p]
    }

    pub fn as_module(&self) -> BasedModule {
        BasedModule { ring: self.algebra.ring(), labels: self.labels.clone() }
    }

    /// Product of basis vectors, when the levels allow it.
    pub fn product(&self, p: usize, q: usize) -> Option<&SparseVec> {
        self.table[p * self.dim() + q].as_ref()
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> Option<SparseVec> {
        let ring = self.algebra.ring();
        let mut out = SparseVec::new();
        for (p, a) in x.iter() {
            for (q, b) in y.iter() {
                out.add_scaled(ring, &ring.mul(a, b), self.product(p, q)?);
            }
        }
        Some(out)
    }

    pub fn level_of(&self, v: &SparseVec) -> usize {
        v.indices().map(|p| self.levels[p]).max().unwrap_or(0)
    }

    /// Rank of the part of filtration level at most `k`, for each `k`.
    pub fn filtered_ranks(&self) -> Vec<usize> {
        (0..=self.max_length).map(|k| self.levels.iter().filter(|&&l| l <= k).count()).collect()
    }

    /// Ranks of the associated graded pieces.
    pub fn graded_ranks(&self) -> Vec<usize> {
        (0..=self.max_length).map(|k| self.levels.iter().filter(|&&l| l == k).count()).collect()
    }

    /// The class of the operator `m ↦ β(m, a)` for `β ∈ O(2)`.
    pub fn operator(&self, beta: &SparseVec, a: &SparseVec) -> SparseVec {
        let ring = self.algebra.ring();
        let amb = ambient(ring, self.word_space.r, beta, std::slice::from_ref(a));
        self.word_space.relations.project(&self.word_space.ambient_project(ring, 1, &amb))
    }

    /// The class of the algebra element `a` acting from the left through
    /// generator 0 of `O(2)`: `m ↦ e_0(a, m)`.
    pub fn left_operator(&self, a: &SparseVec) -> SparseVec {
        let op = self.algebra.operad();
        let swapped = op.transposition(2, 0).images[0].clone();
        self.operator(&swapped, a)
    }

    /// `p · m` for a basis operator `p` acting on a module.
    pub fn act_on(&self, module: &AModule, p: usize, m: &SparseVec) -> Result<SparseVec> {
        let op = self.algebra.operad();
        let ring = module.ring();
        let mut out = SparseVec::new();
        for t in &self.reps[p] {
            let e = op.basis_element(t.inputs.len() + 1, t.operation);
            let args: Vec<SparseVec> = t.inputs.iter().map(|&a| SparseVec::unit(a)).collect();
            out.add_scaled(ring, &t.coef, &module.eval(&e, &args, 0, m)?);
        }
        Ok(out)
    }

    /// Associativity and unit laws on basis triples whose levels fit.
    pub fn check(&self) -> Check {
        let mut c = Check::default();
        let n = self.dim();
        let e = SparseVec::unit;
        for p in 0..n {
            c.record(self.product(self.unit, p) == Some(&e(p)), || format!("1·{} ≠ {}", self.labels[p], self.labels[p]));
            c.record(self.product(p, self.unit) == Some(&e(p)), || format!("{}·1 ≠ {}", self.labels[p], self.labels[p]));
            for q in 0..n {
                for s in 0..n {
                    if self.levels[p] + self.levels[q] + self.levels[s] > self.max_length {
                        continue;
                    }
                    let pq = self.product(p, q).unwrap();
                    let qs = self.product(q, s).unwrap();
                    let (Some(lhs), Some(rhs)) = (self.mul(pq, &e(s)), self.mul(&e(p), qs)) else { continue };
                    c.record(lhs == rhs, || format!("({}·{})·{} ≠ {}·({}·{})", self.labels[p], self.labels[q], self.labels[s], self.labels[p], self.labels[q], self.labels[s]));
                }
            }
        }
        c
    }
}

/// The free module `P_A ⊗ U` on a based module `U`, with `A` acting by left
/// multiplication in `P_A`.
pub fn free_module(env: &EnvelopingAlgebra, u: &BasedModule) -> Result<AModule> {
    let algebra = env.algebra.clone();
    let op = algebra.operad().clone();
    let ring = op.ring();
    if u.ring != ring {
        return Err(Error::Setup(format!("generators over {} but algebra over {}", u.ring, ring)));
    }
    let (np, nu) = (env.dim(), u.rank());
    let dim = np * nu;
    let na = algebra.dim();
    let swap = op.transposition(2, 0);
    let mut left = Vec::with_capacity(op.dim(2));
    for beta in 0..op.dim(2) {
        // β(a, p) = [s·β; a] · p
        let mut table = vec![SparseVec::new(); na * dim];
        for a in 0..na {
            let opr = env.operator(&swap.images[beta], &SparseVec::unit(a));
            for p in 0..np {
                let Some(prod) = env.mul(&opr, &SparseVec::unit(p)) else { continue };
                for k in 0..nu {
                    table[a * dim + p * nu + k] = prod.map_indices(ring, |q| Some(q * nu + k));
                }
            }
        }
        left.push(table);
    }
    let labels = (0..dim)
        .map(|x| if nu == 1 { env.labels[x].clone() } else { format!("{}⊗{}", env.labels[x / nu], u.labels[x % nu]) })
        .collect();
    let degrees: Vec<i64> = (0..dim).map(|x| env.degrees[x / nu] as i64).collect();
    let top = (env.max_length * algebra.max_degree()) as i64;
    let levels = (0..dim).map(|x| env.levels[x / nu]).collect();
    AModule::new(algebra, labels, degrees, top, left)?.with_filtration(Filtration { levels, max_level: env.max_length })
}
