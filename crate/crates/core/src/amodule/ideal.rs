use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::GradedAlgebra;
use crate::error::{Check, Error, Result};
use crate::linalg::{quotient, BasedModule, LinearMap, SparseVec};
use crate::operad::OperadKind;

use super::{check_derivation, derivations, enveloping, free_module, AModule};

/// The module representing `M ↦ Ω(A, M)`, with its universal derivation.
#[derive(Clone, Debug)]
pub struct IdealIA {
    pub module: AModule,
    /// `d: A → I_A`
    pub derivation: LinearMap,
}

/// Ranks on both sides of `Hom_A(I_A, M)_j ≅ Ω(A, M)_j`.
#[derive(Clone, Debug)]
pub struct RepresentabilityRanks {
    pub degree: i64,
    pub hom_rank: usize,
    pub derivation_rank: usize,
    /// Rank of the composites `f ∘ d` over a basis of homomorphisms.
    pub composite_rank: usize,
    /// Every composite `f ∘ d` is a derivation.
    pub composites: Check,
}

impl RepresentabilityRanks {
    pub fn passed(&self) -> bool {
        self.hom_rank == self.derivation_rank && self.composite_rank == self.hom_rank && self.composites.passed()
    }
}

/// `I_A` for the three standard operads:
/// * associative unital: `ker(A ⊗ A → A)` with `a (x ⊗ y) b = ax ⊗ yb`;
/// * commutative unital: `I / I²` for the same `I`;
/// * Lie: the augmentation ideal of `P_A` built from words of length at most
///   `max_length`.
///
/// In the unital cases `I` has the basis `dx·y = x ⊗ y − 1 ⊗ xy` for
/// non-unit `x`, and `d(x) = x ⊗ 1 − 1 ⊗ x`.
pub fn ideal_ia(algebra: Arc<GradedAlgebra>, max_length: usize) -> Result<IdealIA> {
    let op = algebra.operad().clone();
    match op.kind() {
        OperadKind::Ass | OperadKind::Com => {
            let u = algebra
                .unit()
                .filter(|_| op.is_unital())
                .ok_or_else(|| Error::Operad(format!("{} algebra without unit", op.name())))?;
            kernel_model(algebra, u, op.kind() == OperadKind::Com)
        }
        OperadKind::Lie => lie_model(algebra, max_length),
        OperadKind::Custom => Err(Error::Operad(format!("no model of I_A for {}", op.name()))),
    }
}

fn kernel_model(algebra: Arc<GradedAlgebra>, u: usize, commutative: bool) -> Result<IdealIA> {
    let ring = algebra.ring();
    let a = &*algebra;
    let top = a.max_degree();
    let mut pairs = Vec::new();
    let mut index = BTreeMap::new();
    for x in (0..a.dim()).filter(|&x| x != u) {
        for y in 0..a.dim() {
            if a.degree(x) + a.degree(y) <= top {
                index.insert((x, y), pairs.len());
                pairs.push((x, y));
            }
        }
    }
    let dim = pairs.len();
    // coordinates of an element of I given by its x ⊗ y coefficients
    let coords = |terms: &[(SparseVec, SparseVec)]| -> SparseVec {
        let mut out = SparseVec::new();
        for (l, r) in terms {
            for (x, c) in l.iter() {
                for (y, d) in r.iter() {
                    if let Some(&k) = index.get(&(x, y)) {
                        out.add_at(ring, k, &ring.mul(c, d));
                    }
                }
            }
        }
        out
    };
    let e = SparseVec::unit;
    let unit = e(u);
    let minus = |v: SparseVec| v.neg(ring);
    let mut first_a = Vec::with_capacity(a.dim() * dim);
    let mut first_m = Vec::with_capacity(a.dim() * dim);
    for z in 0..a.dim() {
        for &(x, y) in &pairs {
            let xy = a.mul(&e(x), &e(y));
            // z (x ⊗ y − 1 ⊗ xy) and (x ⊗ y − 1 ⊗ xy) z
            first_a.push(coords(&[(a.mul(&e(z), &e(x)), e(y)), (minus(e(z)), xy.clone())]));
            let yz = a.mul(&e(y), &e(z));
            first_m.push(coords(&[(e(x), yz), (minus(unit.clone()), a.mul(&xy, &e(z)))]));
        }
    }
    let label = |&(x, y): &(usize, usize)| {
        if y == u {
            format!("d{}", a.labels()[x])
        } else {
            format!("d{}·{}", a.labels()[x], a.labels()[y])
        }
    };
    let labels: Vec<String> = pairs.iter().map(label).collect();
    let degrees: Vec<i64> = pairs.iter().map(|&(x, y)| (a.degree(x) + a.degree(y)) as i64).collect();
    let d_images: Vec<SparseVec> =
        (0..a.dim()).map(|x| index.get(&(x, u)).map_or_else(SparseVec::new, |&k| e(k))).collect();
    if !commutative {
        let module = AModule::from_action(algebra.clone(), labels, degrees, top as i64, first_a, first_m)?;
        return Ok(IdealIA { module, derivation: LinearMap::from_images(ring, dim, d_images) });
    }

    // I² is spanned by products of basis elements of I inside A ⊗ A
    let expand = |(x, y): (usize, usize)| -> Vec<(SparseVec, SparseVec)> {
        vec![(e(x), e(y)), (minus(unit.clone()), a.mul(&e(x), &e(y)))]
    };
    let mut relations = Vec::new();
    for (i, &p) in pairs.iter().enumerate() {
        for &q in &pairs[i..] {
            if degrees[index[&p]] + degrees[index[&q]] > top as i64 {
                continue;
            }
            let mut terms = Vec::new();
            for (l1, r1) in expand(p) {
                for (l2, r2) in expand(q) {
                    terms.push((a.mul(&l1, &l2), a.mul(&r1, &r2)));
                }
            }
            let v = coords(&terms);
            if !v.is_zero() {
                relations.push(v);
            }
        }
    }
    let quo = quotient(ring, dim, &relations)?;
    if !quo.is_torsion_free() {
        return Err(Error::Ring(format!("I/I² has torsion {:?}", quo.torsion)));
    }
    let survivors: Vec<usize> = quo.section.images.iter().map(|v| v.leading().expect("basis vector").0).collect();
    let n = quo.rank;
    let push = |table: &[SparseVec]| -> Vec<SparseVec> {
        let mut t = Vec::with_capacity(a.dim() * n);
        for z in 0..a.dim() {
            for &s in &survivors {
                t.push(quo.project(&table[z * dim + s]));
            }
        }
        t
    };
    let (qa, qm) = (push(&first_a), push(&first_m));
    let module = AModule::from_action(
        algebra.clone(),
        survivors.iter().map(|&s| labels[s].clone()).collect(),
        survivors.iter().map(|&s| degrees[s]).collect(),
        top as i64,
        qa,
        qm,
    )?;
    let derivation = LinearMap::from_images(ring, n, d_images.iter().map(|v| quo.project(v)).collect());
    Ok(IdealIA { module, derivation })
}

fn lie_model(algebra: Arc<GradedAlgebra>, max_length: usize) -> Result<IdealIA> {
    let ring = algebra.ring();
    let env = enveloping(algebra.clone(), max_length)?;
    let p = free_module(&env, &BasedModule { ring, labels: vec!["1".into()] })?;
    let keep: Vec<usize> = (0..env.dim()).filter(|&q| env.levels()[q] > 0).collect();
    let module = p.restrict_basis(&keep)?;
    let mut pos = vec![usize::MAX; env.dim()];
    for (k, &q) in keep.iter().enumerate() {
        pos[q] = k;
    }
    let images = (0..algebra.dim())
        .map(|x| env.left_operator(&SparseVec::unit(x)).map_indices(ring, |q| (pos[q] != usize::MAX).then_some(pos[q])))
        .collect();
    Ok(IdealIA { module, derivation: LinearMap::from_images(ring, keep.len(), images) })
}

impl IdealIA {
    /// Compares `Hom_A(I_A, M)_j` with `Ω(A, M)_j` through `f ↦ f ∘ d`.
    pub fn representability(&self, m: &AModule, j: i64) -> Result<RepresentabilityRanks> {
        let ring = m.ring();
        let homs = self.module.homs_to(m, Some(j));
        let ders = derivations(m, j);
        let mut composites = Check::default();
        let mut rows = Vec::new();
        for f in &homs {
            let phi = f.compose(&self.derivation)?;
            composites.merge(check_derivation(m, &phi, j, m.algebra().max_degree()));
            let mut v = SparseVec::new();
            for (x, img) in phi.images.iter().enumerate() {
                for (w, c) in img.iter() {
                    v.add_at(ring, x * m.dim() + w, c);
                }
            }
            rows.push(v);
        }
        let composite_rank = crate::linalg::rank_of_rows(ring, rows);
        Ok(RepresentabilityRanks {
            degree: j,
            hom_rank: homs.len(),
            derivation_rank: ders.len(),
            composite_rank,
            composites,
        })
    }
}
