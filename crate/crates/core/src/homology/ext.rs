use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::{increasing_tuples, GradedAlgebra};
use crate::amodule::{derivations, AModule};
use crate::error::{Check, Error, Result};
use crate::linalg::{fraction_field, rank_of_rows, BasedModule, LinearMap, Rref, SparseVec};
use crate::operad::OperadKind;
use crate::perm;

use super::hochschild::{hochschild_cochain_complex, HochschildComplex};
use super::{ChainComplex, Direction, HomologyGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtRoute {
    /// `Hom(Λ^• g, M)` from the Koszul resolution of `S(g)`.
    Koszul,
    /// Normalized Hochschild cochains.
    Cochain,
}

impl ExtRoute {
    pub fn name(&self) -> &'static str {
        match self {
            ExtRoute::Koszul => "koszul",
            ExtRoute::Cochain => "cochain",
        }
    }
}

/// `(Ext^i_{A⊗A}(A, M))_degree` together with the cochain model it was
/// computed in.
#[derive(Clone, Debug)]
pub struct ExtEntry {
    pub i: usize,
    pub degree: i64,
    pub route: ExtRoute,
    pub group: HomologyGroup,
    /// Labels of the cochain coordinates the bases refer to.
    pub labels: Vec<String>,
}

impl ExtEntry {
    pub fn rank(&self) -> usize {
        self.group.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.group.torsion
    }

    /// A representative cocycle written out on its nonzero coordinates.
    pub fn display(&self, v: &SparseVec) -> String {
        v.display_with(&self.labels)
    }
}

/// Entries sorted by `(i, degree)`.
#[derive(Clone, Debug, Default)]
pub struct ExtTable {
    pub entries: Vec<ExtEntry>,
}

impl ExtTable {
    pub fn get(&self, i: usize, degree: i64) -> Option<&ExtEntry> {
        self.entries.iter().find(|e| e.i == i && e.degree == degree)
    }

    /// One line per entry: `i degree route rank torsion`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let torsion: Vec<String> = e.torsion().iter().map(|t| t.to_string()).collect();
            s.push_str(&format!(
                "Ext^{} degree {} route {} rank {} torsion [{}] cocycles {} coboundaries {}\n",
                e.i,
                e.degree,
                e.route.name(),
                e.rank(),
                torsion.join(","),
                e.group.cycles.len(),
                e.group.boundaries.len()
            ));
        }
        s
    }
}

/// The number of generators when `A` is a (truncated) symmetric algebra:
/// commutative unital, rank 1 in degree 0, generated in degree 1, with the
/// ranks of `S(ring^r)`.
pub fn symmetric_generator_count(a: &GradedAlgebra) -> Option<usize> {
    let op = a.operad();
    if op.kind() != OperadKind::Com || !op.is_unital() || a.unit().is_none() || a.component_rank(0) != 1 {
        return None;
    }
    let r = a.component_rank(1);
    let field = fraction_field(a.ring());
    let mut binom = r;
    for d in 2..=a.max_degree() {
        binom = binom * (r + d - 1) / d;
        if a.component_rank(d) != binom {
            return None;
        }
        let products = a.range(1).flat_map(|x| a.range(d - 1).map(move |y| (x, y))).map(|(x, y)| a.mul_basis(0, x, y).clone());
        let mut span = Rref::new(field);
        for p in products {
            span.insert(&p);
        }
        if span.rank() != binom {
            return None;
        }
    }
    Some(r)
}

/// `K^i = Hom(Λ^i g, M_{i+degree})` for `S(g)`, with
/// `(δφ)(x_1∧…∧x_{i+1}) = Σ_j (−1)^{j−1} (x_j φ(…x̂_j…) − φ(…x̂_j…) x_j)`.
/// Coordinates of `K^i` are pairs `(increasing generator tuple, target)`.
pub fn koszul_cochain_complex(a: &GradedAlgebra, m: &AModule, degree: i64) -> Result<ChainComplex> {
    koszul_cochains(a, m, degree).map(|(c, _)| c)
}

type KoszulBasis = Vec<Vec<(Vec<usize>, usize)>>;

fn koszul_cochains(a: &GradedAlgebra, m: &AModule, degree: i64) -> Result<(ChainComplex, KoszulBasis)> {
    let r = symmetric_generator_count(a).ok_or_else(|| Error::Scope("the Koszul route needs a symmetric algebra".into()))?;
    if m.algebra().labels() != a.labels() {
        return Err(Error::Setup("the module is over a different algebra".into()));
    }
    let ring = a.ring();
    let gens: Vec<usize> = a.range(1).collect();
    let bases: KoszulBasis = (0..=r)
        .map(|i| {
            let targets = m.basis_of_degree(i as i64 + degree);
            increasing_tuples(r, i).into_iter().flat_map(|w| targets.iter().map(move |&t| (w.clone(), t))).collect()
        })
        .collect();
    let index: Vec<BTreeMap<&(Vec<usize>, usize), usize>> =
        bases.iter().map(|b| b.iter().enumerate().map(|(k, key)| (key, k)).collect()).collect();
    let mut out = Vec::new();
    for i in 0..=r {
        if i == r {
            out.push(LinearMap::zero(ring, bases[i].len(), 0));
            break;
        }
        let mut images = vec![SparseVec::new(); bases[i].len()];
        for (col, (rest, t)) in bases[i].iter().enumerate() {
            // φ = e_{rest ↦ t} contributes on every w = rest ∪ {x_g}
            for g in (0..r).filter(|g| !rest.contains(g)) {
                let j = rest.partition_point(|&k| k < g);
                let mut w = rest.clone();
                w.insert(j, g);
                let x = gens[g];
                let mut val = m.act_left(0, x, *t).clone();
                val.add_scaled(ring, &ring.from_int(-1), m.act_right(0, x, *t));
                let val = if j % 2 == 0 { val } else { val.neg(ring) };
                for (z, c) in val.iter() {
                    if let Some(&row) = index[i + 1].get(&(w.clone(), z)) {
                        images[col].add_at(ring, row, c);
                    }
                }
            }
        }
        out.push(LinearMap::from_images(ring, bases[i + 1].len(), images));
    }
    let terms = bases
        .iter()
        .map(|b| BasedModule {
            ring,
            labels: b
                .iter()
                .map(|(w, t)| {
                    let wedge: Vec<&str> = w.iter().map(|&k| a.labels()[gens[k]].as_str()).collect();
                    let src = if w.is_empty() { "1".to_string() } else { wedge.join("∧") };
                    format!("{src}↦{}", m.labels()[*t])
                })
                .collect(),
        })
        .collect();
    Ok((ChainComplex::new(ring, Direction::Cochain, 0, terms, None, out)?, bases))
}

fn default_route(a: &GradedAlgebra) -> Result<ExtRoute> {
    if symmetric_generator_count(a).is_some() {
        return Ok(ExtRoute::Koszul);
    }
    let op = a.operad();
    if matches!(op.kind(), OperadKind::Ass | OperadKind::Com) && op.is_unital() && a.unit().is_some() {
        return Ok(ExtRoute::Cochain);
    }
    Err(Error::Scope(format!("no Ext route for an algebra over {}", op.name())))
}

fn hochschild_window(a: &GradedAlgebra, m: &AModule, i: usize, degree: i64) -> Result<HochschildComplex> {
    hochschild_cochain_complex(a, m, i.saturating_sub(1)..=i + 1, Some(degree))
}

/// `(Ext^i_{A⊗A}(A, M))_degree`, by the requested route or the first that
/// applies (Koszul for symmetric algebras, cochains otherwise).
pub fn ext_bimodule(a: &GradedAlgebra, m: &AModule, i: usize, degree: i64, route: Option<ExtRoute>) -> Result<ExtEntry> {
    let route = match route {
        Some(r) => r,
        None => default_route(a)?,
    };
    let complex = match route {
        ExtRoute::Koszul => koszul_cochain_complex(a, m, degree)?,
        ExtRoute::Cochain => {
            if default_route(a).is_err() {
                return Err(Error::Scope("the cochain route needs a unital associative or commutative algebra".into()));
            }
            hochschild_window(a, m, i, degree)?.complex
        }
    };
    let group = complex.homology(i as i64, None);
    let labels = complex.term(i as i64).map(|t| group.support.iter().map(|&k| t.labels[k].clone()).collect()).unwrap_or_default();
    Ok(ExtEntry { i, degree, route, group, labels })
}

/// Several entries, computed in parallel and returned sorted by `(i, degree)`.
pub fn ext_table(
    a: &GradedAlgebra,
    m: &AModule,
    cells: &[(usize, i64)],
    route: Option<ExtRoute>,
) -> Result<ExtTable> {
    let mut cells = cells.to_vec();
    cells.sort();
    cells.dedup();
    let entries = cells.par_iter().map(|&(i, d)| ext_bimodule(a, m, i, d, route)).collect::<Result<Vec<_>>>()?;
    Ok(ExtTable { entries })
}

/// `H^i(A, M)_degree`: derivations for `i = 0`, `Ext^{i+1}_{A⊗A}(A, M)`
/// for `i ≥ 1`.
#[derive(Clone, Debug)]
pub struct PaperCohomology {
    pub i: usize,
    /// The Ext index `i + 1` used for `i ≥ 1`.
    pub ext_index: Option<usize>,
    pub degree: i64,
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

pub fn paper_h(a: &GradedAlgebra, m: &AModule, i: usize, degree: i64) -> Result<PaperCohomology> {
    if i == 0 {
        let rank = derivations(m, degree).len();
        return Ok(PaperCohomology { i, ext_index: None, degree, rank, torsion: Vec::new() });
    }
    let e = ext_bimodule(a, m, i + 1, degree, None)?;
    Ok(PaperCohomology { i, ext_index: Some(i + 1), degree, rank: e.rank(), torsion: e.group.torsion })
}

/// Both routes for `S(g)` and the comparison between them.
#[derive(Clone, Debug)]
pub struct QuillenReport {
    pub i: usize,
    pub degree: i64,
    pub koszul: ExtEntry,
    pub cochain: ExtEntry,
    /// Antisymmetrization `f ↦ (x_1∧…∧x_i ↦ Σ_σ sgn σ f(x_σ1, …, x_σi))`
    /// sends the cochain-route representatives to Koszul cocycles that are
    /// independent modulo coboundaries.
    pub comparison: Check,
}

impl QuillenReport {
    pub fn agree(&self) -> bool {
        self.koszul.rank() == self.cochain.rank() && self.koszul.torsion() == self.cochain.torsion() && self.comparison.passed()
    }
}

pub fn quillen_consistency(a: &GradedAlgebra, m: &AModule, i: usize, degree: i64) -> Result<QuillenReport> {
    let ring = a.ring();
    let (kc, kbasis) = koszul_cochains(a, m, degree)?;
    let koszul = {
        let group = kc.homology(i as i64, None);
        let labels = kc.term(i as i64).map(|t| t.labels.clone()).unwrap_or_default();
        ExtEntry { i, degree, route: ExtRoute::Koszul, group, labels }
    };
    let hc = hochschild_window(a, m, i, degree)?;
    let cochain = {
        let group = hc.complex.homology(i as i64, None);
        let labels = hc.complex.term(i as i64).map(|t| t.labels.clone()).unwrap_or_default();
        ExtEntry { i, degree, route: ExtRoute::Cochain, group, labels }
    };
    let mut comparison = Check::default();
    let gens: Vec<usize> = a.range(1).collect();
    if let Some(kterm) = kbasis.get(i) {
        let hbasis = hc.basis(i);
        let hindex: BTreeMap<&(Vec<usize>, usize), usize> = hbasis.iter().enumerate().map(|(k, key)| (key, k)).collect();
        let perms = perm::all(i);
        let antisymmetrize = |f: &SparseVec| -> SparseVec {
            let mut out = SparseVec::new();
            for (row, (w, t)) in kterm.iter().enumerate() {
                for p in &perms {
                    let tuple: Vec<usize> = p.iter().map(|&k| gens[w[k]]).collect();
                    if let Some(&col) = hindex.get(&(tuple, *t)) {
                        let c = f.get(col);
                        let c = if perm::sign(p) < 0 { ring.neg(&c) } else { c };
                        out.add_at(ring, row, &c);
                    }
                }
            }
            out
        };
        let d = kc.differential(i as i64).expect("position in range");
        let mut span = Rref::new(fraction_field(ring));
        for b in &koszul.group.boundaries {
            span.insert(b);
        }
        for z in &cochain.group.representatives {
            let full = z.map_indices(ring, |k| Some(cochain.group.support[k]));
            let img = antisymmetrize(&full);
            comparison.record(d.apply(&img).is_zero(), || format!("image of {} is not a cocycle", cochain.display(z)));
            comparison.record(span.insert(&img).is_some(), || {
                format!("image of {} is dependent modulo coboundaries", cochain.display(z))
            });
        }
        let images_rank = rank_of_rows(fraction_field(ring), koszul.group.representatives.iter().cloned());
        comparison.record(images_rank == koszul.rank(), || "Koszul representatives are not independent".into());
    }
    Ok(QuillenReport { i, degree, koszul, cochain, comparison })
}
