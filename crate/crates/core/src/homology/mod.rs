//! Finite chain complexes and their homology, the Koszul complex of a
//! symmetric algebra, Hochschild cochains and graded bimodule Ext.

mod ext;
mod hochschild;
mod koszul;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{fraction_field, invariant_factors, rank_of_rows, BasedModule, ExactMatrix, GroundRing, LinearMap, Rref, SparseVec};

pub use ext::{
    ext_bimodule, ext_table, koszul_cochain_complex, paper_h, quillen_consistency, symmetric_generator_count,
    ExtEntry, ExtRoute, ExtTable, PaperCohomology, QuillenReport,
};
pub use hochschild::{hochschild_cochain_complex, HochschildComplex};
pub use koszul::{koszul_complex, KoszulComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `d: C_n → C_{n−1}`
    Chain,
    /// `d: C^n → C^{n+1}`
    Cochain,
}

/// Terms `C_lo, …, C_hi` with the differential out of each term. Maps that
/// would leave the range go to the zero module.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ring: GroundRing,
    direction: Direction,
    lo: i64,
    terms: Vec<BasedModule>,
    internal: Option<Vec<Vec<i64>>>,
    out: Vec<LinearMap>,
}

/// Homology at one position: free rank, torsion invariant factors over ℤ,
/// and bases in the coordinates of the term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
    pub cycles: Vec<SparseVec>,
    pub boundaries: Vec<SparseVec>,
    /// Cycles whose classes are independent modulo boundaries (over the
    /// fraction field), one per unit of rank.
    pub representatives: Vec<SparseVec>,
    /// Basis vectors of the term the bases refer to (all of them unless an
    /// internal degree was selected).
    pub support: Vec<usize>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl ChainComplex {
    /// `out[k]` is the differential leaving term `lo + k`; `d ∘ d = 0` is
    /// verified here.
    pub fn new(
        ring: GroundRing,
        direction: Direction,
        lo: i64,
        terms: Vec<BasedModule>,
        internal: Option<Vec<Vec<i64>>>,
        out: Vec<LinearMap>,
    ) -> Result<Self> {
        if out.len() != terms.len() {
            return Err(Error::Dim(format!("{} differentials for {} terms", out.len(), terms.len())));
        }
        if let Some(int) = &internal {
            if int.len() != terms.len() || int.iter().zip(&terms).any(|(g, t)| g.len() != t.rank()) {
                return Err(Error::Dim("one internal degree per basis vector".into()));
            }
        }
        let c = ChainComplex { ring, direction, lo, terms, internal, out };
        for k in 0..c.terms.len() {
            let d = &c.out[k];
            let target = c.target(k).map_or(0, |t| c.terms[t].rank());
            if d.src_dim != c.terms[k].rank() || d.dst_dim != target {
                return Err(Error::Dim(format!("differential at {} has shape {}x{}", c.lo + k as i64, d.dst_dim, d.src_dim)));
            }
        }
        for k in 0..c.terms.len() {
            if let Some(t) = c.target(k) {
                let dd = c.out[t].compose(&c.out[k])?;
                if !dd.is_zero() {
                    return Err(Error::Setup(format!("d∘d ≠ 0 out of position {}", c.lo + k as i64)));
                }
            }
        }
        Ok(c)
    }

    fn target(&self, k: usize) -> Option<usize> {
        match self.direction {
            Direction::Chain => k.checked_sub(1),
            Direction::Cochain => (k + 1 < self.terms.len()).then_some(k + 1),
        }
    }

    fn source(&self, k: usize) -> Option<usize> {
        match self.direction {
            Direction::Chain => (k + 1 < self.terms.len()).then_some(k + 1),
            Direction::Cochain => k.checked_sub(1),
        }
    }

    pub fn ring(&self) -> GroundRing {
        self.ring
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn positions(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.lo + self.terms.len() as i64 - 1
    }

    fn index(&self, n: i64) -> Option<usize> {
        let k = n - self.lo;
        (0..self.terms.len() as i64).contains(&k).then_some(k as usize)
    }

    pub fn term(&self, n: i64) -> Option<&BasedModule> {
        self.index(n).map(|k| &self.terms[k])
    }

    pub fn differential(&self, n: i64) -> Option<&LinearMap> {
        self.index(n).map(|k| &self.out[k])
    }

    pub fn internal_degrees(&self, n: i64) -> Option<&[i64]> {
        let k = self.index(n)?;
        self.internal.as_ref().map(|i| i[k].as_slice())
    }

    /// Homology at position `n`, restricted to one internal degree when
    /// given (positions outside the range have zero homology).
    pub fn homology(&self, n: i64, internal_degree: Option<i64>) -> HomologyGroup {
        let ring = self.ring;
        let Some(k) = self.index(n) else {
            return HomologyGroup {
                rank: 0,
                torsion: Vec::new(),
                cycles: Vec::new(),
                boundaries: Vec::new(),
                representatives: Vec::new(),
                support: Vec::new(),
            };
        };
        let select = |t: usize| -> Vec<usize> {
            match (internal_degree, &self.internal) {
                (Some(d), Some(int)) => (0..self.terms[t].rank()).filter(|&b| int[t][b] == d).collect(),
                _ => (0..self.terms[t].rank()).collect(),
            }
        };
        let support = select(k);
        let mut pos = vec![usize::MAX; self.terms[k].rank()];
        for (i, &b) in support.iter().enumerate() {
            pos[b] = i;
        }
        let rows = self.out[k].dst_dim;
        let columns: Vec<SparseVec> = support.iter().map(|&b| self.out[k].images[b].clone()).collect();
        let cycles = ExactMatrix::from_columns(ring, rows, &columns).kernel_basis();
        let boundaries: Vec<SparseVec> = match self.source(k) {
            Some(s) => select(s)
                .into_iter()
                .map(|b| self.out[s].images[b].map_indices(ring, |i| Some(pos[i])))
                .filter(|v| !v.is_zero())
                .collect(),
            None => Vec::new(),
        };
        let field = fraction_field(ring);
        let im_rank = rank_of_rows(field, boundaries.iter().cloned());
        let rank = cycles.len() - im_rank;
        let torsion = if ring == GroundRing::Integers {
            invariant_factors(boundaries.clone(), support.len()).into_iter().filter(|f| !f.is_one()).collect()
        } else {
            Vec::new()
        };
        let mut span = Rref::new(field);
        for b in &boundaries {
            span.insert(b);
        }
        let representatives = cycles.iter().filter(|z| span.insert(z).is_some()).cloned().collect();
        HomologyGroup { rank, torsion, cycles, boundaries, representatives, support }
    }
}
