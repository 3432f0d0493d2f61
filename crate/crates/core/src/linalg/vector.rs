use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::ring::{fmt_scalar, GroundRing, Scalar};
use super::LinalgError;

/// Sparse coordinate vector; absent entries are zero and zeros are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec {
    entries: BTreeMap<usize, Scalar>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(i, Scalar::one());
        SparseVec { entries }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(ring: GroundRing, pairs: I) -> Self {
        let mut v = SparseVec::new();
        for (i, c) in pairs {
            v.add_at(ring, i, &c);
        }
        v
    }

    pub fn from_ints(ring: GroundRing, pairs: &[(usize, i64)]) -> Self {
        Self::from_pairs(ring, pairs.iter().map(|&(i, c)| (i, ring.from_int(c))))
    }

    pub fn from_dense(ring: GroundRing, dense: &[Scalar]) -> Self {
        Self::from_pairs(ring, dense.iter().cloned().enumerate())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.entries.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn get_ref(&self, i: usize) -> Option<&Scalar> {
        self.entries.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.iter().next().map(|(&i, c)| (i, c))
    }

    pub fn trailing(&self) -> Option<(usize, &Scalar)> {
        self.entries.iter().next_back().map(|(&i, c)| (i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn set(&mut self, ring: GroundRing, i: usize, c: Scalar) {
        let c = ring.reduce(c);
        if c.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, c);
        }
    }

    pub fn add_at(&mut self, ring: GroundRing, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(e) => {
                let s = ring.add(e, c);
                if s.is_zero() {
                    self.entries.remove(&i);
                } else {
                    *e = s;
                }
            }
            None => {
                let c = ring.reduce(c.clone());
                if !c.is_zero() {
                    self.entries.insert(i, c);
                }
            }
        }
    }

    /// `self += coef * other`
    pub fn add_scaled(&mut self, ring: GroundRing, coef: &Scalar, other: &SparseVec) {
        if coef.is_zero() {
            return;
        }
        for (i, c) in other.iter() {
            self.add_at(ring, i, &ring.mul(coef, c));
        }
    }

    pub fn add(&mut self, ring: GroundRing, other: &SparseVec) {
        for (i, c) in other.iter() {
            self.add_at(ring, i, c);
        }
    }

    pub fn scaled(&self, ring: GroundRing, coef: &Scalar) -> SparseVec {
        let mut out = SparseVec::new();
        out.add_scaled(ring, coef, self);
        out
    }

    pub fn neg(&self, ring: GroundRing) -> SparseVec {
        self.scaled(ring, &ring.from_int(-1))
    }

    pub fn sub(&self, ring: GroundRing, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(ring, &ring.from_int(-1), other);
        out
    }

    pub fn dot(&self, ring: GroundRing, other: &SparseVec) -> Scalar {
        let (small, big) = if self.nnz() <= other.nnz() { (self, other) } else { (other, self) };
        let mut acc = Scalar::zero();
        for (i, c) in small.iter() {
            if let Some(d) = big.get_ref(i) {
                acc = ring.add(&acc, &ring.mul(c, d));
            }
        }
        acc
    }

    /// Reindexes entries; entries mapped to `None` are dropped.
    pub fn map_indices(&self, ring: GroundRing, f: impl Fn(usize) -> Option<usize>) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in self.iter() {
            if let Some(j) = f(i) {
                out.add_at(ring, j, c);
            }
        }
        out
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut d = vec![Scalar::zero(); n];
        for (i, c) in self.iter() {
            d[i] = c.clone();
        }
        d
    }

    pub fn remove(&mut self, i: usize) -> Option<Scalar> {
        self.entries.remove(&i)
    }

    pub fn retain(&mut self, f: impl Fn(usize) -> bool) {
        self.entries.retain(|&i, _| f(i));
    }

    /// Renders as `2*e - f` style, using `labels` for basis names.
    pub fn display_with(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (i, c)) in self.iter().enumerate() {
            let name = labels.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, sign) {
                (0, "-") => out.push('-'),
                (0, _) => {}
                _ => out.push_str(&format!(" {sign} ")),
            }
            let a = c.abs();
            if a.is_one() {
                out.push_str(&name);
            } else {
                out.push_str(&format!("{}*{}", fmt_scalar(&a), name));
            }
        }
        out
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(i, c)| format!("{}:{}", i, fmt_scalar(c))).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A linear map between finite free modules, stored as the images of the
/// source basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub ring: GroundRing,
    pub src_dim: usize,
    pub dst_dim: usize,
    pub images: Vec<SparseVec>,
}

impl LinearMap {
    pub fn zero(ring: GroundRing, src_dim: usize, dst_dim: usize) -> Self {
        LinearMap { ring, src_dim, dst_dim, images: vec![SparseVec::new(); src_dim] }
    }

    pub fn identity(ring: GroundRing, n: usize) -> Self {
        LinearMap { ring, src_dim: n, dst_dim: n, images: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_images(ring: GroundRing, dst_dim: usize, images: Vec<SparseVec>) -> Self {
        LinearMap { ring, src_dim: images.len(), dst_dim, images }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            out.add_scaled(self.ring, c, &self.images[i]);
        }
        out
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &LinearMap) -> Result<LinearMap, LinalgError> {
        if first.dst_dim != self.src_dim {
            return Err(LinalgError::Dim(format!(
                "cannot compose {}x{} after {}x{}",
                self.dst_dim, self.src_dim, first.dst_dim, first.src_dim
            )));
        }
        let images = first.images.iter().map(|v| self.apply(v)).collect();
        Ok(LinearMap { ring: self.ring, src_dim: first.src_dim, dst_dim: self.dst_dim, images })
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(SparseVec::is_zero)
    }

    /// Matrix with one column per source basis vector.
    pub fn to_matrix(&self) -> super::ExactMatrix {
        super::ExactMatrix::from_columns(self.ring, self.dst_dim, &self.images)
    }

    pub fn rank(&self) -> usize {
        super::echelon::rank_of_rows(self.ring, self.images.iter().cloned())
    }
}
