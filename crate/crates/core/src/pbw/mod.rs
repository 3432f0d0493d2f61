//! `U(g)` by straightening words and by deforming `S(g)`, and the
//! comparison `S(g) ≅ gr U(g)`.

mod filtered;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{increasing_tuples, jacobiator, LieAlgebraData};
use crate::deformation::{
    at_t_one, level_one_from_bracket, prolong, specialize, tower_automorphisms, Prolongation, Specialization, Straightener,
    SymmetricBase,
};
use crate::error::{Check, Error, Result};
use crate::linalg::{invariant_factors, GroundRing, LinearMap, SparseVec};

pub use filtered::{FilteredAlgebra, GradedComponent};

/// Rules `x_b x_a → x_a x_b + [x_b, x_a]` for `b > a` on words in the
/// ordered generators of `g`; normal forms are nondecreasing monomials.
#[derive(Clone, Debug)]
pub struct RewritingSystem {
    pub g: LieAlgebraData,
    pub max_degree: usize,
}

/// The two ways of starting to straighten `x_c x_b x_a` (`c > b > a`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    /// `(c, b, a)`.
    pub triple: [usize; 3],
    /// Normal form after rewriting `x_c x_b` first.
    pub left_first: SparseVec,
    /// Normal form after rewriting `x_b x_a` first.
    pub right_first: SparseVec,
    /// `right_first − left_first`; equals `J(x_a ∧ x_b ∧ x_c)`.
    pub residual: SparseVec,
}

impl RewritingSystem {
    pub fn new(g: &LieAlgebraData, max_degree: usize) -> Self {
        RewritingSystem { g: g.clone(), max_degree }
    }

    /// `(b, a, [x_b, x_a])` for every `b > a`.
    pub fn rules(&self) -> Vec<(usize, usize, SparseVec)> {
        let r = self.g.rank();
        (0..r).flat_map(|b| (0..b).map(move |a| (b, a))).map(|(b, a)| (b, a, self.g.bracket_basis(b, a).clone())).collect()
    }

    fn vectorize(&self, sym: &SymmetricBase, nf: &BTreeMap<Vec<usize>, crate::linalg::Scalar>) -> SparseVec {
        let ring = self.g.ring();
        let mut v = SparseVec::new();
        for (m, c) in nf {
            v.add_at(ring, sym.index_of(m).expect("normal forms stay inside the truncation"), c);
        }
        v
    }

    /// Overlaps `x_c x_b x_a` resolved both ways, in the basis of
    /// nondecreasing monomials of degree at most 3.
    pub fn ambiguities(&self) -> Result<Vec<Ambiguity>> {
        let ring = self.g.ring();
        let sym = SymmetricBase::new(&self.g.module, 3)?;
        let mut st = Straightener::new(&self.g, 3);
        let mut out = Vec::new();
        for t in increasing_tuples(self.g.rank(), 3) {
            let word = [t[2], t[1], t[0]];
            let left = self.vectorize(&sym, &at_t_one(ring, &st.rewrite_at(&word, 0)));
            let right = self.vectorize(&sym, &at_t_one(ring, &st.rewrite_at(&word, 1)));
            let residual = right.sub(ring, &left).map_indices(ring, |k| Some(k - sym.generator(0)));
            out.push(Ambiguity { triple: word, left_first: left, right_first: right, residual });
        }
        Ok(out)
    }

    pub fn is_confluent(&self) -> Result<bool> {
        Ok(self.ambiguities()?.iter().all(|a| a.residual.is_zero()))
    }
}

/// The normal-form algebra of a rewriting system.
#[derive(Clone, Debug)]
pub struct RewritingEnvelope {
    pub system: RewritingSystem,
    pub monomials: Arc<SymmetricBase>,
    pub algebra: FilteredAlgebra,
    /// Unresolved overlaps only; empty for Jacobi brackets.
    pub ambiguities: Vec<Ambiguity>,
}

/// `U(g)` up to filtration degree `D` on nondecreasing monomials, with
/// products by straightening at the leftmost inversion.
pub fn enveloping_by_rewriting(g: &LieAlgebraData, max_degree: usize) -> Result<RewritingEnvelope> {
    let ring = g.ring();
    let system = RewritingSystem::new(g, max_degree);
    let sym = Arc::new(SymmetricBase::new(&g.module, max_degree)?);
    let n = sym.monomials.len();
    let mut st = Straightener::new(g, max_degree);
    let mut products = vec![SparseVec::new(); n * n];
    for (i, a) in sym.monomials.iter().enumerate() {
        for (j, b) in sym.monomials.iter().enumerate() {
            if a.len() + b.len() <= max_degree {
                let nf = at_t_one(ring, &st.normal_form(&[a.as_slice(), b.as_slice()].concat()));
                products[i * n + j] = system.vectorize(&sym, &nf);
            }
        }
    }
    let base = &sym.algebra;
    let algebra = FilteredAlgebra::new(ring, base.labels().to_vec(), base.degrees().to_vec(), max_degree, products, 0)?;
    let ambiguities = system.ambiguities()?.into_iter().filter(|a| !a.residual.is_zero()).collect();
    Ok(RewritingEnvelope { system, monomials: sym, algebra, ambiguities })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwDegree {
    pub degree: usize,
    pub gr_rank: usize,
    /// `C(n + r − 1, n)`.
    pub sym_rank: usize,
    pub torsion: Vec<BigInt>,
    /// `S^n(g) → gr_n U(g)` is onto.
    pub surjective: bool,
    pub is_iso: bool,
}

#[derive(Clone, Debug)]
pub struct PbwReport {
    pub name: String,
    pub ring: GroundRing,
    pub max_degree: usize,
    pub degrees: Vec<PbwDegree>,
    pub filtration_ranks: Vec<usize>,
    pub associative: Check,
    pub confluent: bool,
}

impl PbwReport {
    pub fn passed(&self) -> bool {
        self.confluent && self.associative.passed() && self.degrees.iter().all(|d| d.is_iso && d.torsion.is_empty())
    }
}

impl fmt::Display for PbwReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pbw {} over {} up to degree {}", self.name, self.ring, self.max_degree)?;
        writeln!(f, "confluent: {}", self.confluent)?;
        writeln!(f, "associative: {} ({} checked)", self.associative.verdict(), self.associative.checked)?;
        writeln!(f, "filtration ranks: {:?}", self.filtration_ranks)?;
        for d in &self.degrees {
            let torsion: Vec<String> = d.torsion.iter().map(ToString::to_string).collect();
            writeln!(
                f,
                "n={} rank gr={} rank S={} torsion=[{}] surjective={} iso={}",
                d.degree,
                d.gr_rank,
                d.sym_rank,
                torsion.join(","),
                d.surjective,
                d.is_iso
            )?;
        }
        Ok(())
    }
}

/// Degreewise comparison of `S(g)` with `gr U(g)`; requires Jacobi.
pub fn pbw_verify(g: &LieAlgebraData, max_degree: usize) -> Result<PbwReport> {
    if !g.is_jacobi() {
        let j = jacobiator(g);
        return Err(Error::Jacobi(format!("{} has nonzero Jacobiator {:?}", g.name, j.images)));
    }
    let ring = g.ring();
    let env = enveloping_by_rewriting(g, max_degree)?;
    let u = &env.algebra;
    let components = u.graded_components()?;
    let r = g.rank();
    let mut degrees = Vec::new();
    for c in &components {
        let n = c.degree;
        // images of the ordered products x_{m_1} ⋯ x_{m_n}, read in degree n
        let block: Vec<usize> = (0..u.dim()).filter(|&k| u.filtration_degree(k) == n).collect();
        let mut pos = vec![usize::MAX; u.dim()];
        for (k, &b) in block.iter().enumerate() {
            pos[b] = k;
        }
        let images: Vec<SparseVec> = block
            .iter()
            .map(|&b| {
                let mut v = SparseVec::unit(u.unit());
                for &x in &env.monomials.monomials[b] {
                    v = u.mul(&v, &SparseVec::unit(env.monomials.generator(x)));
                }
                let mut top = v.clone();
                top.retain(|k| u.filtration_degree(k) == n);
                top.map_indices(ring, |k| Some(pos[k]))
            })
            .collect();
        let factors = invariant_factors(images.clone(), block.len());
        let map = LinearMap::from_images(ring, block.len(), images);
        let rank = map.rank();
        let unimodular = factors.len() == block.len() && factors.iter().all(|f| num_traits::One::is_one(f));
        let surjective = c.generated && rank == c.rank && (ring != GroundRing::Integers || unimodular);
        let sym_rank = binomial(n + r - 1, n);
        degrees.push(PbwDegree {
            degree: n,
            gr_rank: c.rank,
            sym_rank,
            torsion: c.torsion.clone(),
            surjective,
            is_iso: surjective && c.rank == sym_rank && block.len() == sym_rank,
        });
    }
    Ok(PbwReport {
        name: g.name.clone(),
        ring,
        max_degree,
        degrees,
        filtration_ranks: u.filtration_ranks(),
        associative: u.check_associative(),
        confluent: env.ambiguities.is_empty(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub level: usize,
    pub obstruction_vanishes: bool,
    pub prolongation_rank: usize,
    pub automorphism_rank: usize,
}

/// Result of running the deformation pipeline to `U(g)`.
#[derive(Clone, Debug)]
pub struct PbwDeformationReport {
    pub name: String,
    pub max_degree: usize,
    pub levels: Vec<LevelReport>,
    pub specialization: Specialization,
    /// `φ′(x) φ′(y) − φ′(y) φ′(x) = φ′[x, y]` in `A_1`, and the `t`-graded
    /// form `μ_1(x,y) − μ_1(y,x) = [x,y]`, `μ_k` symmetric on generators for
    /// `k ≥ 2`.
    pub commutator: Check,
    /// `φ′: U(g) → A_1` on the monomial bases.
    pub phi: LinearMap,
    pub filtered: Check,
    /// `φ′(uv) = φ′(u) φ′(v)` on basis pairs.
    pub multiplicative: Check,
    /// Per degree: `S^n(g) → gr_n U(g) → gr_n A_1 ≅ S^n(g)` is the identity.
    pub composition: Vec<(usize, bool)>,
}

impl PbwDeformationReport {
    pub fn passed(&self) -> bool {
        self.specialization.passed()
            && self.commutator.passed()
            && self.filtered.passed()
            && self.multiplicative.passed()
            && self.composition.iter().all(|&(_, ok)| ok)
            && self.levels.iter().all(|l| l.obstruction_vanishes)
    }
}

impl fmt::Display for PbwDeformationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pbw via deformation {} up to degree {}", self.name, self.max_degree)?;
        for l in &self.levels {
            writeln!(
                f,
                "level {}: obstruction {} prolongations {} automorphisms {}",
                l.level,
                if l.obstruction_vanishes { "0" } else { "nonzero" },
                l.prolongation_rank,
                l.automorphism_rank
            )?;
        }
        for (name, c) in [
            ("gr(A_1) = S(g)", &self.specialization.constants),
            ("commutator", &self.commutator),
            ("filtered", &self.filtered),
            ("multiplicative", &self.multiplicative),
        ] {
            writeln!(f, "{name}: {} ({} checked)", c.verdict(), c.checked)?;
        }
        for (n, ok) in &self.composition {
            writeln!(f, "composition in degree {n}: {}", if *ok { "identity" } else { "not identity" })?;
        }
        Ok(())
    }
}

/// Builds `U(g)` as `A_1` of the tower prolonged from the bracket, maps the
/// rewriting model into it and checks that the map is a filtered
/// isomorphism inducing the identity on `S(g)`.
pub fn pbw_via_deformation(g: &LieAlgebraData, max_degree: usize) -> Result<PbwDeformationReport> {
    if !g.is_jacobi() {
        return Err(Error::Jacobi(format!("{} fails the Jacobi identity", g.name)));
    }
    let ring = g.ring();
    let first = level_one_from_bracket(g, max_degree)?;
    let mut levels = vec![LevelReport {
        level: 1,
        obstruction_vanishes: true,
        prolongation_rank: 0,
        automorphism_rank: tower_automorphisms(&first)?.rank(),
    }];
    let mut towers = vec![first];
    for _ in 1..max_degree.max(1) {
        let current = towers.last().unwrap();
        match prolong(current)? {
            Prolongation::Obstructed(c) => {
                return Err(Error::Obstructed(format!("level {} of {} does not prolong: {:?}", c.level, g.name, c.restriction)));
            }
            p @ Prolongation::Prolonged { .. } => {
                let rank = p.space_rank().unwrap_or(0);
                let Prolongation::Prolonged { tower, .. } = p else { unreachable!() };
                levels.push(LevelReport {
                    level: tower.level(),
                    obstruction_vanishes: true,
                    prolongation_rank: rank,
                    automorphism_rank: tower_automorphisms(&tower)?.rank(),
                });
                towers.push(tower);
            }
        }
    }
    let specialization = specialize(&towers)?;
    let last = towers.last().unwrap();
    let sym = last.symmetric_base().expect("towers from a bracket carry their monomials").clone();
    let a1 = &specialization.a_one;
    let r = g.rank();

    let mut commutator = Check::default();
    for x in 0..r {
        for y in 0..r {
            let (ex, ey) = (SparseVec::unit(sym.generator(x)), SparseVec::unit(sym.generator(y)));
            let lhs = a1.mul(&ex, &ey).sub(ring, &a1.mul(&ey, &ex));
            let rhs = g.bracket_basis(x, y).map_indices(ring, |k| Some(sym.generator(k)));
            commutator.record(lhs == rhs, || format!("[{}, {}] in A_1 is {}", g.labels()[x], g.labels()[y], a1.display(&lhs)));
            if max_degree >= 2 {
                for k in 1..=last.level() {
                    let (px, py) = (sym.generator(x), sym.generator(y));
                    let d = last.mu_basis(k, px, py).sub(ring, last.mu_basis(k, py, px));
                    let want = if k == 1 { rhs.clone() } else { SparseVec::new() };
                    commutator.record(d == want, || format!("μ_{k} is not the bracket on ({}, {})", g.labels()[x], g.labels()[y]));
                }
            }
        }
    }

    let env = enveloping_by_rewriting(g, max_degree)?;
    let u = &env.algebra;
    let n = u.dim();
    let images: Vec<SparseVec> = (0..n)
        .map(|b| {
            let mut v = SparseVec::unit(a1.unit());
            for &x in &env.monomials.monomials[b] {
                v = a1.mul(&v, &SparseVec::unit(sym.generator(x)));
            }
            v
        })
        .collect();
    let phi = LinearMap::from_images(ring, n, images);
    let mut filtered = Check::default();
    for b in 0..n {
        let f = u.filtration_degree(b);
        filtered.record(phi.images[b].indices().all(|k| a1.filtration_degree(k) <= f), || {
            format!("φ′({}) = {} leaves F_{f}", u.labels()[b], a1.display(&phi.images[b]))
        });
    }
    let mut multiplicative = Check::default();
    for i in 0..n {
        for j in 0..n {
            if u.filtration_degree(i) + u.filtration_degree(j) > max_degree {
                continue;
            }
            let lhs = phi.apply(u.mul_basis(i, j));
            let rhs = a1.mul(&phi.images[i], &phi.images[j]);
            multiplicative.record(lhs == rhs, || {
                format!("φ′({} {}) = {} but φ′ φ′ = {}", u.labels()[i], u.labels()[j], a1.display(&lhs), a1.display(&rhs))
            });
        }
    }
    let composition = (0..=max_degree)
        .map(|d| {
            let ok = (0..n).filter(|&b| u.filtration_degree(b) == d).all(|b| {
                let mut top = phi.images[b].clone();
                top.retain(|k| a1.filtration_degree(k) == d);
                top == SparseVec::unit(b)
            });
            (d, ok)
        })
        .collect();
    Ok(PbwDeformationReport {
        name: g.name.clone(),
        max_degree,
        levels,
        specialization,
        commutator,
        phi,
        filtered,
        multiplicative,
        composition,
    })
}
