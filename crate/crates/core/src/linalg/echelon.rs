//! Row reduction: reduced echelon forms over fields, integer echelon forms
//! with unimodular transforms, and sparse pivoting used for ranks and
//! invariant factors.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::{GroundRing, Scalar};
use super::vector::SparseVec;

/// The field used for rank and span questions: ℤ is embedded in ℚ.
pub fn fraction_field(ring: GroundRing) -> GroundRing {
    match ring {
        GroundRing::Integers => GroundRing::Rationals,
        r => r,
    }
}

/// Incrementally maintained reduced row echelon form over a field.
///
/// Rows are inserted in order; each new independent row takes its smallest
/// surviving column as pivot, so the result is reproducible.
#[derive(Clone, Debug)]
pub struct Rref {
    ring: GroundRing,
    pivots: BTreeMap<usize, SparseVec>,
}

impl Rref {
    pub fn new(ring: GroundRing) -> Self {
        Rref { ring: fraction_field(ring), pivots: BTreeMap::new() }
    }

    pub fn ring(&self) -> GroundRing {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_cols(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseVec> {
        self.pivots.get(&col)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec)> + '_ {
        self.pivots.iter().map(|(&c, r)| (c, r))
    }

    /// Fully reduces `v` against the current pivots.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        let hits: Vec<usize> = v.indices().filter(|c| self.pivots.contains_key(c)).collect();
        for c in hits {
            let coef = out.get(c);
            if coef.is_zero() {
                continue;
            }
            let neg = self.ring.neg(&coef);
            out.add_scaled(self.ring, &neg, &self.pivots[&c]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts a row; returns its pivot column if it was independent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let r = self.reduce(v);
        let (c, lead) = r.leading()?;
        let inv = self.ring.inv(lead).expect("nonzero element of a field");
        let r = r.scaled(self.ring, &inv);
        for row in self.pivots.values_mut() {
            let coef = row.get(c);
            if !coef.is_zero() {
                let neg = self.ring.neg(&coef);
                row.add_scaled(self.ring, &neg, &r);
            }
        }
        self.pivots.insert(c, r);
        Some(c)
    }

    /// Basis of `{x : row·x = 0 for all inserted rows}` in `cols` coordinates.
    pub fn kernel_basis(&self, cols: usize) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for f in (0..cols).filter(|c| !self.pivots.contains_key(c)) {
            let mut k = SparseVec::unit(f);
            for (&c, row) in &self.pivots {
                let e = row.get(f);
                if !e.is_zero() {
                    k.set(self.ring, c, self.ring.neg(&e));
                }
            }
            out.push(k);
        }
        out
    }
}

pub fn rank_of_rows<I: IntoIterator<Item = SparseVec>>(ring: GroundRing, rows: I) -> usize {
    let rows: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_zero()).collect();
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows.iter().filter_map(SparseVec::max_index).max().unwrap_or(0) + 1;
    SparseElimination::run(fraction_field(ring), rows, ncols, false).pivots
}

/// Markowitz-style sparse elimination. With `units_only`, only pivots that
/// are units of the ring are used (the remainder is returned for a dense
/// Smith computation); over a field every nonzero entry qualifies.
pub(crate) struct SparseElimination {
    pub pivots: usize,
    pub remainder: Vec<SparseVec>,
}

impl SparseElimination {
    pub(crate) fn run(ring: GroundRing, rows: Vec<SparseVec>, ncols: usize, units_only: bool) -> Self {
        let mut live: BTreeMap<usize, SparseVec> = BTreeMap::new();
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
        for (i, r) in rows.into_iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            for c in r.indices() {
                col_rows[c].insert(i);
            }
            live.insert(i, r);
        }
        let mut pivots = 0;
        loop {
            // pick the admissible entry with the least Markowitz cost; ties by (row, col)
            let mut best: Option<(usize, usize, usize)> = None;
            for (&i, r) in &live {
                if matches!(best, Some((0, _, _))) {
                    break;
                }
                let rn = r.nnz() - 1;
                for (c, e) in r.iter() {
                    let ok = if units_only { ring.is_unit(e) } else { true };
                    if !ok {
                        continue;
                    }
                    let cost = rn * (col_rows[c].len() - 1);
                    if best.map_or(true, |(b, _, _)| cost < b) {
                        best = Some((cost, i, c));
                    }
                }
            }
            let Some((_, pi, pc)) = best else { break };
            let prow = live.remove(&pi).unwrap();
            for c in prow.indices() {
                col_rows[c].remove(&pi);
            }
            let pinv = ring.inv(&prow.get(pc)).expect("pivot is a unit");
            let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
            for t in targets {
                let row = live.get_mut(&t).unwrap();
                let f = ring.neg(&ring.mul(&row.get(pc), &pinv));
                let before: Vec<usize> = row.indices().collect();
                row.add_scaled(ring, &f, &prow);
                for c in before {
                    if row.get_ref(c).is_none() {
                        col_rows[c].remove(&t);
                    }
                }
                for c in row.indices() {
                    col_rows[c].insert(t);
                }
                if row.is_zero() {
                    live.remove(&t);
                }
            }
            pivots += 1;
        }
        SparseElimination { pivots, remainder: live.into_values().collect() }
    }
}

/// Integer row echelon form with the unimodular transform that produced it.
///
/// `transform[k] · input = rows[k]` for the echelon rows; the transform rows
/// that produce zero are listed in `kernel`, and they form a ℤ-basis of the
/// left kernel (saturated by construction).
#[derive(Clone, Debug)]
pub struct IntegerEchelon {
    pub rows: Vec<SparseVec>,
    pub transform: Vec<SparseVec>,
    pub kernel: Vec<SparseVec>,
}

fn floor_div(a: &Scalar, b: &Scalar) -> Scalar {
    Scalar::from_integer(a.to_integer().div_floor(&b.to_integer()))
}

pub fn integer_echelon(input: &[SparseVec]) -> IntegerEchelon {
    let z = GroundRing::Integers;
    let mut active: Vec<(SparseVec, SparseVec)> = input
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), SparseVec::unit(i)))
        .collect();
    let mut kernel: Vec<SparseVec> = Vec::new();
    active.retain(|(r, t)| {
        if r.is_zero() {
            kernel.push(t.clone());
            false
        } else {
            true
        }
    });
    let mut rows = Vec::new();
    let mut transform = Vec::new();
    while !active.is_empty() {
        let col = active.iter().map(|(r, _)| r.leading().unwrap().0).min().unwrap();
        loop {
            let mut cand: Vec<usize> =
                (0..active.len()).filter(|&k| active[k].0.leading().unwrap().0 == col).collect();
            if cand.len() == 1 {
                break;
            }
            cand.sort_by(|&a, &b| {
                let ea = active[a].0.get(col).abs();
                let eb = active[b].0.get(col).abs();
                ea.cmp(&eb).then(a.cmp(&b))
            });
            let p = cand[0];
            let (prow, ptr) = active[p].clone();
            let plead = prow.get(col);
            for &o in &cand[1..] {
                let q = floor_div(&active[o].0.get(col), &plead);
                let nq = z.neg(&q);
                active[o].0.add_scaled(z, &nq, &prow);
                active[o].1.add_scaled(z, &nq, &ptr);
            }
            let mut k = 0;
            while k < active.len() {
                if active[k].0.is_zero() {
                    let (_, t) = active.remove(k);
                    kernel.push(t);
                } else {
                    k += 1;
                }
            }
        }
        let idx = active.iter().position(|(r, _)| r.leading().unwrap().0 == col).unwrap();
        let (mut r, mut t) = active.remove(idx);
        if r.get(col).is_negative() {
            r = r.neg(z);
            t = t.neg(z);
        }
        rows.push(r);
        transform.push(t);
    }
    IntegerEchelon { rows, transform, kernel }
}

/// Reduced echelon over ℤ when every pivot is ±1; `None` otherwise.
pub fn unimodular_rref(input: &[SparseVec]) -> Option<Rref> {
    let e = integer_echelon(input);
    if e.rows.iter().any(|r| !r.leading().unwrap().1.is_one()) {
        return None;
    }
    let mut rref = Rref::new(GroundRing::Integers);
    for r in &e.rows {
        rref.insert(r);
    }
    Some(rref)
}

pub(crate) fn scalar_is_integral(v: &SparseVec) -> bool {
    v.iter().all(|(_, c)| c.is_integer())
}
