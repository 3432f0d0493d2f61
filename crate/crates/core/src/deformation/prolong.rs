use std::sync::Arc;

use crate::algebra::{increasing_tuples, GradedAlgebra};
use crate::amodule::AModule;
use crate::error::{Check, Error, Result};
use crate::homology::{ext_bimodule, hochschild_cochain_complex, ExtEntry, HochschildComplex};
use crate::linalg::{ExactMatrix, LinearMap, SparseVec};

use super::DeformationTower;

/// Which particular solution of `δμ = o` to take: elimination with the
/// unknowns in their natural order or reversed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotOrder {
    Forward,
    Reverse,
}

/// The obstruction to prolonging a level-`i` tower, a Hochschild 3-cocycle
/// of internal degree `−(i+1)` with values in `A_+`.
#[derive(Clone, Debug)]
pub struct ObstructionClass {
    pub level: usize,
    pub degree: i64,
    /// Nonzero values `o(a, b, c)` on triples of non-unit basis vectors.
    pub values: Vec<([usize; 3], SparseVec)>,
    /// The cochain in the coordinates of the Hochschild complex.
    pub representative: SparseVec,
    /// `δo = 0` on every basis quadruple inside the truncation.
    pub cocycle: Check,
    /// Whether `o` is a coboundary, i.e. the class is zero.
    pub vanishes: bool,
    /// For a level-1 tower on `S(g)`: the alternating sum of `o` over
    /// permutations of generator triples, a map `Λ³g → g`.
    pub restriction: Option<LinearMap>,
}

impl ObstructionClass {
    pub fn is_zero(&self) -> bool {
        self.vanishes
    }
}

#[derive(Clone, Debug)]
pub enum Prolongation {
    Obstructed(ObstructionClass),
    /// The next level together with `(H¹(A, A_+))_{−i−1}` (as `Ext²`),
    /// which classifies the prolongations up to isomorphism. `space` is
    /// `None` when the coefficients vanish in that degree.
    Prolonged { tower: DeformationTower, space: Option<ExtEntry> },
}

impl Prolongation {
    pub fn tower(&self) -> Option<&DeformationTower> {
        match self {
            Prolongation::Prolonged { tower, .. } => Some(tower),
            Prolongation::Obstructed(_) => None,
        }
    }

    pub fn space_rank(&self) -> Option<usize> {
        match self {
            Prolongation::Prolonged { space, .. } => Some(space.as_ref().map_or(0, ExtEntry::rank)),
            Prolongation::Obstructed(_) => None,
        }
    }
}

/// `Σ_{p+q=n, p,q≥1} μ_p(μ_q(a,b),c) − μ_p(a,μ_q(b,c))`.
fn obstruction_value(t: &DeformationTower, n: usize, a: usize, b: usize, c: usize) -> SparseVec {
    let ring = t.base().ring();
    let mut out = SparseVec::new();
    for p in 1..n {
        let q = n - p;
        if q > t.level() || p > t.level() {
            continue;
        }
        out.add(ring, &t.mu(p, t.mu_basis(q, a, b), &SparseVec::unit(c)));
        out.add_scaled(ring, &ring.from_int(-1), &t.mu(p, &SparseVec::unit(a), t.mu_basis(q, b, c)));
    }
    out
}

/// Cochains of degree `−k` with values in `A_+ / A_{>D−k}`.
fn cochains(base: &Arc<GradedAlgebra>, k: usize, positions: std::ops::RangeInclusive<usize>) -> Result<Option<(AModule, HochschildComplex)>> {
    let top = base.max_degree() as i64 - k as i64;
    if top < 1 {
        return Ok(None);
    }
    let m = AModule::augmentation_ideal(base.clone())?.truncate_above(top)?;
    let hc = hochschild_cochain_complex(base, &m, positions, Some(-(k as i64)))?;
    Ok(Some((m, hc)))
}

fn solve_ordered(matrix_cols: &[SparseVec], rows: usize, rhs: &SparseVec, order: PivotOrder, ring: crate::linalg::GroundRing) -> Option<SparseVec> {
    let n = matrix_cols.len();
    let cols: Vec<SparseVec> = match order {
        PivotOrder::Forward => matrix_cols.to_vec(),
        PivotOrder::Reverse => matrix_cols.iter().rev().cloned().collect(),
    };
    let x = ExactMatrix::from_columns(ring, rows, &cols).solve(rhs)?;
    Some(match order {
        PivotOrder::Forward => x,
        PivotOrder::Reverse => x.map_indices(ring, |k| Some(n - 1 - k)),
    })
}

const PERMUTATIONS: [([usize; 3], i64); 6] =
    [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1)];

fn analyse(tower: &DeformationTower, order: PivotOrder) -> Result<(ObstructionClass, Option<Vec<SparseVec>>)> {
    let base = tower.base();
    let ring = base.ring();
    let i = tower.level();
    let n = i + 1;
    let dim = base.dim();
    let positive = base.range(1).start;

    let restriction = match tower.symmetric_base() {
        Some(s) if i == 1 => {
            let r = s.generators.rank();
            let images = increasing_tuples(r, 3)
                .into_iter()
                .map(|t| {
                    let mut v = SparseVec::new();
                    for (p, sign) in PERMUTATIONS {
                        let args: Vec<usize> = p.iter().map(|&k| s.generator(t[k])).collect();
                        let o = obstruction_value(tower, n, args[0], args[1], args[2]);
                        v.add_scaled(ring, &ring.from_int(sign), &o.map_indices(ring, |z| Some(z - s.generator(0))));
                    }
                    v
                })
                .collect();
            Some(LinearMap::from_images(ring, r, images))
        }
        _ => None,
    };

    let Some((m, hc)) = cochains(base, n, 2..=4)? else {
        // nothing of degree ≥ 1 is reachable: o and μ_{i+1} vanish
        let mut cocycle = Check::default();
        for t in crate::algebra::tuples_with_degree_at_most(base.degrees(), 3, base.max_degree()) {
            let o = obstruction_value(tower, n, t[0], t[1], t[2]);
            cocycle.record(o.is_zero(), || format!("nonzero obstruction beyond the truncation: {}", base.display(&o)));
        }
        let class = ObstructionClass {
            level: i,
            degree: -(n as i64),
            values: Vec::new(),
            representative: SparseVec::new(),
            cocycle,
            vanishes: true,
            restriction,
        };
        return Ok((class, Some(vec![SparseVec::new(); dim * dim])));
    };

    let mut values = Vec::new();
    let mut representative = SparseVec::new();
    let mut last: Option<(Vec<usize>, SparseVec)> = None;
    for (k, (t, w)) in hc.basis(3).iter().enumerate() {
        if last.as_ref().is_none_or(|(lt, _)| lt != t) {
            let o = obstruction_value(tower, n, t[0], t[1], t[2]);
            if let Some(bad) = o.indices().find(|&z| z < positive || z - positive >= m.dim()) {
                return Err(Error::Setup(format!("obstruction has a component {} outside A_+", base.labels()[bad])));
            }
            if !o.is_zero() {
                values.push(([t[0], t[1], t[2]], o.clone()));
            }
            last = Some((t.clone(), o));
        }
        let c = last.as_ref().unwrap().1.get(positive + w);
        if !num_traits::Zero::is_zero(&c) {
            representative.add_at(ring, k, &c);
        }
    }

    let mut cocycle = Check::default();
    let delta = hc.complex.differential(3).expect("position 3 is in range").apply(&representative);
    let c4 = hc.basis(4);
    for k in 0..c4.len() {
        cocycle.record(num_traits::Zero::is_zero(&delta.get(k)), || {
            format!("δo ≠ 0 at {}", hc.complex.term(4).unwrap().labels[k])
        });
    }

    let d2 = hc.complex.differential(2).expect("position 2 is in range");
    let solution = solve_ordered(&d2.images, d2.dst_dim, &representative, order, ring);
    let mu = solution.map(|x| {
        let mut table = vec![SparseVec::new(); dim * dim];
        for (k, c) in x.iter() {
            let (t, w) = &hc.basis(2)[k];
            table[t[0] * dim + t[1]].add_at(ring, positive + w, c);
        }
        table
    });
    let class = ObstructionClass {
        level: i,
        degree: -(n as i64),
        values,
        representative,
        cocycle,
        vanishes: mu.is_some(),
        restriction,
    };
    Ok((class, mu))
}

/// The obstruction `o_{i+1}` of a level-`i` tower and its class, decided by
/// solving `δμ = o` in the Hochschild complex truncated at the degree of
/// the base.
pub fn obstruction(tower: &DeformationTower) -> Result<ObstructionClass> {
    analyse(tower, PivotOrder::Forward).map(|(c, _)| c)
}

pub fn prolong(tower: &DeformationTower) -> Result<Prolongation> {
    prolong_with(tower, PivotOrder::Forward)
}

/// Prolongs by the particular solution of `δμ_{i+1} = o_{i+1}` selected by
/// `order`, or reports the obstruction.
pub fn prolong_with(tower: &DeformationTower, order: PivotOrder) -> Result<Prolongation> {
    let (class, mu) = analyse(tower, order)?;
    let Some(mu) = mu else {
        return Ok(Prolongation::Obstructed(class));
    };
    let mut corrections = tower.corrections().to_vec();
    corrections.push(mu);
    let mut next = DeformationTower::from_corrections(tower.base().clone(), corrections)?;
    next.symmetric = tower.symmetric.clone();
    let k = tower.level() + 1;
    let top = tower.max_degree() as i64 - k as i64;
    let space = if top < 1 {
        None
    } else {
        let m = AModule::augmentation_ideal(tower.base().clone())?.truncate_above(top)?;
        Some(ext_bimodule(tower.base(), &m, 2, -(k as i64), None)?)
    };
    Ok(Prolongation::Prolonged { tower: next, space })
}

/// For two towers of the same level `L` that agree below `L`: a map `φ` of
/// degree `−L` with `id + t^L φ` carrying the first onto the second, or
/// `None` when `μ'_L − μ''_L` is not a coboundary.
pub fn tower_isomorphism(first: &DeformationTower, second: &DeformationTower) -> Result<Option<LinearMap>> {
    let base = first.base();
    let l = first.level();
    if second.base().labels() != base.labels() || second.base().tables() != base.tables() {
        return Err(Error::Chain("towers over different bases".into()));
    }
    if second.level() != l || l == 0 || first.corrections()[..l - 1] != second.corrections()[..l - 1] {
        return Err(Error::Chain("towers must have the same positive level and agree below it".into()));
    }
    let ring = base.ring();
    let dim = base.dim();
    let positive = base.range(1).start;
    let Some((_, hc)) = cochains(base, l, 1..=3)? else {
        return Ok(Some(LinearMap::zero(ring, dim, dim)));
    };
    let mut diff = SparseVec::new();
    for (k, (t, w)) in hc.basis(2).iter().enumerate() {
        let v = first.mu_basis(l, t[0], t[1]).sub(ring, second.mu_basis(l, t[0], t[1]));
        let c = v.get(positive + w);
        if !num_traits::Zero::is_zero(&c) {
            diff.add_at(ring, k, &c);
        }
    }
    if !hc.complex.differential(2).unwrap().apply(&diff).is_zero() {
        return Err(Error::Setup("the difference of two prolongations is not a cocycle".into()));
    }
    let d1 = hc.complex.differential(1).unwrap();
    let Some(x) = ExactMatrix::from_columns(ring, d1.dst_dim, &d1.images).solve(&diff) else {
        return Ok(None);
    };
    let mut images = vec![SparseVec::new(); dim];
    for (k, c) in x.iter() {
        let (t, w) = &hc.basis(1)[k];
        images[t[0]].add_at(ring, positive + w, c);
    }
    let phi = LinearMap::from_images(ring, dim, images);
    // μ'_L(a,b) + φ(ab) = μ''_L(a,b) + φ(a) b + a φ(b)
    for pair in crate::algebra::tuples_with_degree_at_most(base.degrees(), 2, base.max_degree()) {
        let (a, b) = (pair[0], pair[1]);
        let mut lhs = first.mu_basis(l, a, b).clone();
        lhs.add(ring, &phi.apply(base.mul_basis(0, a, b)));
        let mut rhs = second.mu_basis(l, a, b).clone();
        rhs.add(ring, &base.mul(&phi.images[a], &SparseVec::unit(b)));
        rhs.add(ring, &base.mul(&SparseVec::unit(a), &phi.images[b]));
        if lhs != rhs {
            return Err(Error::Setup(format!("id + t^{l} φ fails on ({}, {})", base.labels()[a], base.labels()[b])));
        }
    }
    Ok(Some(phi))
}
