//! Free algebras: degree `i` is the coinvariant module `(V^{⊗i} ⊗ O(i))_{S_i}`.
//!
//! Ambient basis vectors of `V^{⊗i} ⊗ O(i)` are numbered
//! `ρ · r^i + Σ v_k r^{i−1−k}`, so coinvariant representatives prefer the
//! lowest operation index and then the lexicographically smallest tuple.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{coinvariants, BasedModule, LinearMap, Quotient, SparseVec};
use crate::operad::{build_standard, FinOperad, OperadKind};
use crate::perm;

use super::exterior::{tensor_index, untensor};
use super::{AlgebraHom, GradedAlgebra};

#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    pub algebra: Arc<GradedAlgebra>,
    pub generators: BasedModule,
    /// Coinvariant presentation of each positive degree (index 0 unused).
    pub presentations: Vec<Option<Quotient>>,
}

impl FreeAlgebra {
    pub fn max_degree(&self) -> usize {
        self.algebra.max_degree()
    }

    /// Global index of generator `a`.
    pub fn generator(&self, a: usize) -> usize {
        self.algebra.range(1).start + a
    }

    /// Torsion invariants of each degree (nonempty only over ℤ).
    pub fn torsion(&self) -> Vec<Vec<BigInt>> {
        self.presentations.iter().map(|p| p.as_ref().map(|q| q.torsion.clone()).unwrap_or_default()).collect()
    }

    /// Representative of a degree-`i` basis class as a combination of
    /// `(operation, tuple)` pairs.
    pub fn lift(&self, global: usize) -> Vec<(crate::linalg::Scalar, usize, Vec<usize>)> {
        let a = &self.algebra;
        let i = a.degree(global);
        let r = self.generators.rank();
        let local = global - a.range(i).start;
        let q = self.presentations[i].as_ref().expect("positive degree");
        let ri = r.pow(i as u32);
        q.section.images[local]
            .iter()
            .map(|(idx, c)| (c.clone(), idx / ri, untensor(r, i, idx % ri)))
            .collect()
    }

    /// Restriction of a homomorphism to the generators.
    pub fn restrict_to_generators(&self, hom: &AlgebraHom) -> LinearMap {
        let images = (0..self.generators.rank()).map(|a| hom.map.images[self.generator(a)].clone()).collect();
        LinearMap::from_images(hom.map.ring, hom.map.dst_dim, images)
    }
}

fn monomial_label(names: &[String], t: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut k = 0;
    while k < t.len() {
        let mut e = 1;
        while k + e < t.len() && t[k + e] == t[k] {
            e += 1;
        }
        parts.push(if e == 1 { names[t[k]].clone() } else { format!("{}^{e}", names[t[k]]) });
        k += e;
    }
    parts.join("*")
}

fn class_label(op: &FinOperad, names: &[String], i: usize, rho: usize, t: &[usize]) -> String {
    match op.kind() {
        OperadKind::Com => monomial_label(names, t),
        OperadKind::Ass => perm::unrank(i, rho).iter().map(|&k| names[t[k]].as_str()).collect::<Vec<_>>().join("*"),
        OperadKind::Lie => {
            let w: Vec<usize> = std::iter::once(0)
                .chain(perm::unrank(i - 1, rho).into_iter().map(|x| x + 1))
                .collect();
            let mut s = names[t[w[0]]].clone();
            for &x in &w[1..] {
                s = format!("[{s},{}]", names[t[x]]);
            }
            s
        }
        OperadKind::Custom => {
            let args: Vec<&str> = t.iter().map(|&k| names[k].as_str()).collect();
            format!("{}({})", op.space(i).labels[rho], args.join(","))
        }
    }
}

fn presentation(op: &FinOperad, r: usize, i: usize) -> Result<Quotient> {
    let ring = op.ring();
    let ri = r.pow(i as u32);
    let dim = op.dim(i) * ri;
    let mut gens = Vec::new();
    for k in 0..i.saturating_sub(1) {
        let s = op.transposition(i, k);
        let images = (0..dim)
            .map(|idx| {
                let (rho, t) = (idx / ri, untensor(r, i, idx % ri));
                let mut ts = t.clone();
                ts.swap(k, k + 1);
                let tidx = tensor_index(r, &ts);
                s.images[rho].map_indices(ring, |sig| Some(sig * ri + tidx))
            })
            .collect();
        gens.push(LinearMap::from_images(ring, dim, images));
    }
    Ok(coinvariants(ring, dim, &gens)?)
}

/// The free `op`-algebra on `v`, truncated at degree `max_degree`.
pub fn free_algebra(op: Arc<FinOperad>, v: &BasedModule, max_degree: usize) -> Result<FreeAlgebra> {
    if max_degree > op.max_arity() {
        return Err(Error::Trunc(format!(
            "degree {max_degree} needs operations of arity {max_degree}, operad stops at {}",
            op.max_arity()
        )));
    }
    if op.max_arity() < 2 {
        return Err(Error::Arity("free algebras need binary operations".into()));
    }
    if v.ring != op.ring() {
        return Err(Error::Setup(format!("generators over {} but operad over {}", v.ring, op.ring())));
    }
    let unital = op.is_unital();
    if unital && !matches!(op.kind(), OperadKind::Com | OperadKind::Ass) {
        return Err(Error::Operad(format!("unital free algebras need com or ass, not {}", op.name())));
    }
    let ring = op.ring();
    let r = v.rank();
    let mut presentations = vec![None];
    let mut components = vec![if unital { vec!["1".to_string()] } else { Vec::new() }];
    for i in 1..=max_degree {
        let q = presentation(&op, r, i)?;
        let ri = r.pow(i as u32);
        let labels = q
            .section
            .images
            .iter()
            .enumerate()
            .map(|(k, s)| match s.leading() {
                Some((idx, _)) if s.nnz() == 1 => class_label(&op, &v.labels, i, idx / ri, &untensor(r, i, idx % ri)),
                _ => format!("c{i}_{k}"),
            })
            .collect();
        components.push(labels);
        presentations.push(Some(q));
    }
    let offsets: Vec<usize> = std::iter::once(0)
        .chain(components.iter().scan(0, |acc, c| {
            *acc += c.len();
            Some(*acc)
        }))
        .collect();
    let dim = *offsets.last().unwrap();
    let degree_of = |g: usize| (0..=max_degree).find(|&d| g < offsets[d + 1]).unwrap();
    let lift = |g: usize| -> Vec<(crate::linalg::Scalar, usize, Vec<usize>)> {
        let i = degree_of(g);
        let ri = r.pow(i as u32);
        presentations[i].as_ref().unwrap().section.images[g - offsets[i]]
            .iter()
            .map(|(idx, c)| (c.clone(), idx / ri, untensor(r, i, idx % ri)))
            .collect()
    };
    let mut tables = vec![vec![SparseVec::new(); dim * dim]; op.dim(2)];
    for (beta, table) in tables.iter_mut().enumerate() {
        let b = op.basis_element(2, beta);
        for x in 0..dim {
            let i = degree_of(x);
            for y in 0..dim {
                let j = degree_of(y);
                if i + j > max_degree {
                    continue;
                }
                let value = if i == 0 && j == 0 {
                    SparseVec::unit(0)
                } else if i == 0 || j == 0 {
                    // β(1, y) and β(x, 1): feed the unit into the operation
                    let (slot, other) = if i == 0 { (0, y) } else { (1, x) };
                    let e = op.remove_input(2, beta, slot).expect("unital com or ass");
                    let c = ring.mul(&e.coords.get(0), &op.binary_decomposition()?.unary[0]);
                    SparseVec::unit(other).scaled(ring, &c)
                } else {
                    let n = i + j;
                    let rn = r.pow(n as u32);
                    let mut ambient = SparseVec::new();
                    for (c1, rho1, t1) in lift(x) {
                        let outer = op.partial_compose(&b, 0, &op.basis_element(i, rho1))?;
                        for (c2, rho2, t2) in lift(y) {
                            let comp = op.partial_compose(&outer, i, &op.basis_element(j, rho2))?;
                            let mut t = t1.clone();
                            t.extend(&t2);
                            let tidx = tensor_index(r, &t);
                            let c = ring.mul(&c1, &c2);
                            for (rho, cr) in comp.coords.iter() {
                                ambient.add_at(ring, rho * rn + tidx, &ring.mul(&c, cr));
                            }
                        }
                    }
                    let q = presentations[n].as_ref().unwrap();
                    q.project(&ambient).map_indices(ring, |k| Some(offsets[n] + k))
                };
                table[x * dim + y] = value;
            }
        }
    }
    let algebra = GradedAlgebra::new(op.clone(), components, tables, unital.then_some(0), true)?;
    Ok(FreeAlgebra { algebra: Arc::new(algebra), generators: v.clone(), presentations })
}

/// `S(g)`, realized as the free unital commutative algebra on `g`.
pub fn symmetric_algebra(g: &BasedModule, max_degree: usize) -> Result<FreeAlgebra> {
    let op = build_standard(OperadKind::Com, true, g.ring, max_degree.max(3))?;
    free_algebra(Arc::new(op), g, max_degree)
}

/// The unique homomorphism `Free(V) → A` restricting to `f` on generators.
/// `f` must send every generator into degree `d` of the target; degree `i`
/// of the free algebra then lands in degree `i · d`.
pub fn extend_from_generators(
    free: &FreeAlgebra,
    target: Arc<GradedAlgebra>,
    f: &LinearMap,
    d: usize,
) -> Result<AlgebraHom> {
    let src = &free.algebra;
    if f.src_dim != free.generators.rank() || f.dst_dim != target.dim() {
        return Err(Error::Dim("generator map has the wrong shape".into()));
    }
    if let Some(bad) = f.images.iter().position(|v| !target.is_homogeneous(v, d)) {
        return Err(Error::Degree(format!("image of generator {} is not of degree {d}", free.generators.labels[bad])));
    }
    let nonzero = !f.is_zero();
    if nonzero && src.max_degree() * d > target.max_degree() {
        return Err(Error::Trunc(format!(
            "degree {} maps to degree {} beyond the target truncation {}",
            src.max_degree(),
            src.max_degree() * d,
            target.max_degree()
        )));
    }
    let ring = src.ring();
    let mut images = Vec::with_capacity(src.dim());
    for g in 0..src.dim() {
        let i = src.degree(g);
        if i == 0 {
            let u = target
                .unit()
                .ok_or_else(|| Error::Setup("unital free algebra mapping to a non-unital target".into()))?;
            images.push(SparseVec::unit(u));
            continue;
        }
        let mut img = SparseVec::new();
        if nonzero {
            for (c, rho, t) in free.lift(g) {
                let args: Vec<SparseVec> = t.iter().map(|&a| f.images[a].clone()).collect();
                let v = target.act(&src.operad().basis_element(i, rho), &args)?;
                img.add_scaled(ring, &c, &v);
            }
        }
        images.push(img);
    }
    let map = LinearMap::from_images(ring, target.dim(), images);
    AlgebraHom::new(free.algebra.clone(), target, map)
}
