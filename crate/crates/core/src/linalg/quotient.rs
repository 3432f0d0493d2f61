//! Quotients of free modules by relation submodules, and coinvariants.

use num_bigint::BigInt;
use num_traits::One;

use super::echelon::{unimodular_rref, Rref};
use super::matrix::ExactMatrix;
use super::ring::GroundRing;
use super::vector::{LinearMap, SparseVec};
use super::{BasedModule, LinalgError};

/// `ring^dim / span(relations)`, presented by its free part with explicit
/// projection and section, plus torsion invariants over ℤ.
///
/// When the quotient is free on surviving basis vectors, the survivors are
/// the lowest-index ones and the section sends each free generator to its
/// basis vector.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ring: GroundRing,
    pub dim: usize,
    pub rank: usize,
    pub torsion: Vec<BigInt>,
    pub projection: LinearMap,
    pub section: LinearMap,
}

impl Quotient {
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        self.projection.apply(v)
    }

    pub fn lift(&self, v: &SparseVec) -> SparseVec {
        self.section.apply(v)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

fn from_rref(ring: GroundRing, dim: usize, rref: &Rref) -> Quotient {
    // rref was computed in reversed coordinates: pivots are the largest original indices
    let rev = |i: usize| dim - 1 - i;
    let pivots: std::collections::BTreeSet<usize> = rref.pivot_cols().map(rev).collect();
    let free: Vec<usize> = (0..dim).filter(|i| !pivots.contains(i)).collect();
    let mut pos = vec![usize::MAX; dim];
    for (k, &f) in free.iter().enumerate() {
        pos[f] = k;
    }
    let images = (0..dim)
        .map(|i| {
            if pos[i] != usize::MAX {
                return SparseVec::unit(pos[i]);
            }
            let row = rref.pivot_row(rev(i)).unwrap();
            let mut out = SparseVec::new();
            for (c, e) in row.iter() {
                let orig = rev(c);
                if orig != i {
                    out.add_at(ring, pos[orig], &ring.neg(e));
                }
            }
            out
        })
        .collect();
    let section = LinearMap::from_images(ring, dim, free.iter().map(|&f| SparseVec::unit(f)).collect());
    Quotient {
        ring,
        dim,
        rank: free.len(),
        torsion: Vec::new(),
        projection: LinearMap::from_images(ring, free.len(), images),
        section,
    }
}

pub fn quotient(ring: GroundRing, dim: usize, relations: &[SparseVec]) -> Result<Quotient, LinalgError> {
    if let Some(bad) = relations.iter().find(|r| r.max_index().is_some_and(|m| m >= dim)) {
        return Err(LinalgError::Dim(format!("relation {bad} outside ambient rank {dim}")));
    }
    let reversed: Vec<SparseVec> = relations.iter().map(|r| r.map_indices(ring, |i| Some(dim - 1 - i))).collect();
    if ring.is_field() {
        let mut rref = Rref::new(ring);
        for r in &reversed {
            rref.insert(r);
        }
        return Ok(from_rref(ring, dim, &rref));
    }
    if let Some(rref) = unimodular_rref(&reversed) {
        return Ok(from_rref(ring, dim, &rref));
    }
    let m = ExactMatrix::new(ring, relations.len(), dim, relations.to_vec());
    let snf = m.smith_normal_form()?;
    let r = snf.rank();
    let images = (0..dim)
        .map(|i| snf.v.row(i).map_indices(ring, |j| j.checked_sub(r)))
        .collect();
    let section = (r..dim).map(|j| snf.v_inv.row(j).clone()).collect();
    Ok(Quotient {
        ring,
        dim,
        rank: dim - r,
        torsion: snf.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect(),
        projection: LinearMap::from_images(ring, dim - r, images),
        section: LinearMap::from_images(ring, dim, section),
    })
}

fn signed_unit(v: &SparseVec) -> Option<(usize, bool)> {
    if v.nnz() != 1 {
        return None;
    }
    let (i, c) = v.leading()?;
    if c.is_one() {
        Some((i, false))
    } else if (-c).is_one() {
        Some((i, true))
    } else {
        None
    }
}

/// Orbit computation when every generator permutes basis vectors up to sign.
fn signed_orbit_coinvariants(ring: GroundRing, dim: usize, generators: &[LinearMap]) -> Option<Quotient> {
    let maps: Vec<Vec<(usize, bool)>> = generators
        .iter()
        .map(|g| g.images.iter().map(signed_unit).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    // sign of each vector relative to the smallest member of its orbit
    let mut root = vec![usize::MAX; dim];
    let mut sign = vec![false; dim];
    let mut killed = Vec::new();
    let char2 = ring.characteristic() == 2;
    for start in 0..dim {
        if root[start] != usize::MAX {
            continue;
        }
        root[start] = start;
        let mut stack = vec![start];
        let mut conflict = false;
        while let Some(v) = stack.pop() {
            for m in &maps {
                let (w, s) = m[v];
                let ws = sign[v] ^ s;
                if root[w] == usize::MAX {
                    root[w] = start;
                    sign[w] = ws;
                    stack.push(w);
                } else if sign[w] != ws && !char2 {
                    conflict = true;
                }
            }
        }
        if conflict {
            killed.push(start);
        }
    }
    let killed: std::collections::BTreeSet<usize> = killed.into_iter().collect();
    let reps: Vec<usize> = (0..dim).filter(|&v| root[v] == v && !killed.contains(&v)).collect();
    let mut pos = vec![usize::MAX; dim];
    for (k, &r) in reps.iter().enumerate() {
        pos[r] = k;
    }
    let images = (0..dim)
        .map(|v| {
            let p = pos[root[v]];
            if p == usize::MAX {
                SparseVec::new()
            } else {
                SparseVec::from_ints(ring, &[(p, if sign[v] { -1 } else { 1 })])
            }
        })
        .collect();
    let torsion = if ring == GroundRing::Integers { killed.iter().map(|_| BigInt::from(2)).collect() } else { Vec::new() };
    Some(Quotient {
        ring,
        dim,
        rank: reps.len(),
        torsion,
        projection: LinearMap::from_images(ring, reps.len(), images),
        section: LinearMap::from_images(ring, dim, reps.iter().map(|&r| SparseVec::unit(r)).collect()),
    })
}

/// Coinvariants `ring^dim / span{g·v − v}` for the given generators of a
/// group action.
pub fn coinvariants(ring: GroundRing, dim: usize, generators: &[LinearMap]) -> Result<Quotient, LinalgError> {
    for g in generators {
        if g.src_dim != dim || g.dst_dim != dim {
            return Err(LinalgError::Dim(format!("action generator is {}x{}, expected {dim}", g.dst_dim, g.src_dim)));
        }
    }
    if let Some(q) = signed_orbit_coinvariants(ring, dim, generators) {
        return Ok(q);
    }
    coinvariants_by_elimination(ring, dim, generators)
}

/// Coinvariants of a based module under matrices acting on coordinate
/// columns. The quotient is labelled by its surviving basis vectors (or
/// `[k]` for generators that are not basis vectors).
pub fn coinvariants_of_module(
    module: &BasedModule,
    actions: &[ExactMatrix],
) -> Result<(BasedModule, ExactMatrix), LinalgError> {
    let maps: Vec<LinearMap> = actions.iter().map(ExactMatrix::to_linear_map).collect();
    let q = coinvariants(module.ring, module.rank(), &maps)?;
    let labels = q
        .section
        .images
        .iter()
        .enumerate()
        .map(|(k, v)| match (v.nnz(), v.leading()) {
            (1, Some((i, c))) if *c == module.ring.one() => module.labels[i].clone(),
            _ => format!("[{k}]"),
        })
        .collect();
    Ok((BasedModule { ring: module.ring, labels }, q.projection.to_matrix()))
}

/// Coinvariants through the general quotient routine, without the orbit
/// shortcut.
pub fn coinvariants_by_elimination(
    ring: GroundRing,
    dim: usize,
    generators: &[LinearMap],
) -> Result<Quotient, LinalgError> {
    let mut rels = Vec::new();
    for g in generators {
        for (v, img) in g.images.iter().enumerate() {
            let mut r = img.clone();
            r.add_at(ring, v, &ring.from_int(-1));
            if !r.is_zero() {
                rels.push(r);
            }
        }
    }
    quotient(ring, dim, &rels)
}
