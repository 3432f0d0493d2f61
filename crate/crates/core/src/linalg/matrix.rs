use std::fmt;

use num_traits::Zero;

use super::echelon::{integer_echelon, scalar_is_integral, Rref};
use super::ring::{fmt_scalar, GroundRing, Scalar};
use super::snf::{smith_normal_form, SmithForm};
use super::vector::{LinearMap, SparseVec};
use super::LinalgError;

/// Exact matrix with sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: GroundRing,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn new(ring: GroundRing, rows: usize, cols: usize, data: Vec<SparseVec>) -> Self {
        assert_eq!(data.len(), rows, "row count mismatch");
        debug_assert!(data.iter().all(|r| r.max_index().map_or(true, |m| m < cols)));
        ExactMatrix { ring, rows, cols, data }
    }

    pub fn zero(ring: GroundRing, rows: usize, cols: usize) -> Self {
        Self::new(ring, rows, cols, vec![SparseVec::new(); rows])
    }

    pub fn identity(ring: GroundRing, n: usize) -> Self {
        Self::new(ring, n, n, (0..n).map(SparseVec::unit).collect())
    }

    pub fn from_ints(ring: GroundRing, dense: &[Vec<i64>]) -> Self {
        let cols = dense.first().map_or(0, Vec::len);
        let data = dense
            .iter()
            .map(|r| SparseVec::from_pairs(ring, r.iter().enumerate().map(|(j, &x)| (j, ring.from_int(x)))))
            .collect();
        Self::new(ring, dense.len(), cols, data)
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(ring: GroundRing, rows: usize, columns: &[SparseVec]) -> Self {
        let mut data = vec![SparseVec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col.iter() {
                data[i].set(ring, j, c.clone());
            }
        }
        Self::new(ring, rows, columns.len(), data)
    }

    pub fn ring(&self) -> GroundRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, c: Scalar) {
        self.data[i].set(self.ring, j, c);
    }

    pub fn transpose(&self) -> Self {
        Self::from_columns(self.ring, self.cols, &self.data)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(
            self.ring,
            self.data.iter().enumerate().map(|(i, r)| (i, r.dot(self.ring, v))),
        )
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut out = SparseVec::new();
                for (k, c) in r.iter() {
                    out.add_scaled(self.ring, c, &other.data[k]);
                }
                out
            })
            .collect();
        Ok(Self::new(self.ring, self.rows, other.cols, data))
    }

    /// Columns as a linear map `ring^cols -> ring^rows`.
    pub fn to_linear_map(&self) -> LinearMap {
        let t = self.transpose();
        LinearMap::from_images(self.ring, self.rows, t.data)
    }

    pub fn rank(&self) -> usize {
        super::echelon::rank_of_rows(self.ring, self.data.iter().cloned())
    }

    fn rref(&self) -> Rref {
        let mut r = Rref::new(self.ring);
        for row in &self.data {
            r.insert(row);
        }
        r
    }

    /// Basis of `{x : self · x = 0}`. Over ℤ the basis spans the saturated
    /// kernel lattice.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let rref = self.rref();
        if self.ring != GroundRing::Integers || rref.rows().all(|(_, r)| scalar_is_integral(r)) {
            return rref.kernel_basis(self.cols);
        }
        integer_echelon(&self.transpose().data).kernel
    }

    /// A solution of `self · x = b`, or `None` if there is none in the ring.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        if self.ring == GroundRing::Integers {
            return self.solve_integer(b);
        }
        let mut rref = Rref::new(self.ring);
        for (i, row) in self.data.iter().enumerate() {
            let mut aug = row.clone();
            aug.set(self.ring, self.cols, b.get(i));
            rref.insert(&aug);
        }
        if rref.pivot_row(self.cols).is_some() {
            return None;
        }
        Some(SparseVec::from_pairs(
            self.ring,
            rref.rows().map(|(c, r)| (c, r.get(self.cols))),
        ))
    }

    fn solve_integer(&self, b: &SparseVec) -> Option<SparseVec> {
        let z = GroundRing::Integers;
        let ech = integer_echelon(&self.transpose().data);
        let mut residual = b.clone();
        let mut x = SparseVec::new();
        for (row, t) in ech.rows.iter().zip(&ech.transform) {
            let (lead, lc) = row.leading().unwrap();
            if let Some((first, _)) = residual.leading() {
                if first < lead {
                    return None;
                }
            }
            let target = residual.get(lead);
            if target.is_zero() {
                continue;
            }
            let y = z.div(&target, lc)?;
            residual.add_scaled(z, &z.neg(&y), row);
            x.add_scaled(z, &y, t);
        }
        residual.is_zero().then_some(x)
    }

    pub fn smith_normal_form(&self) -> Result<SmithForm, LinalgError> {
        smith_normal_form(self)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.data {
            let cells: Vec<String> = (0..self.cols).map(|j| fmt_scalar(&r.get(j))).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_over_integers_is_saturated() {
        let z = GroundRing::Integers;
        let m = ExactMatrix::from_ints(z, &[vec![2, 3]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).is_zero());
        assert!(scalar_is_integral(&k[0]));
        let g = k[0].iter().map(|(_, c)| c.to_integer()).fold(num_bigint::BigInt::from(0), |a, b| {
            num_integer::Integer::gcd(&a, &b)
        });
        assert_eq!(g, num_bigint::BigInt::from(1));
    }

    #[test]
    fn integer_solve_detects_divisibility() {
        let z = GroundRing::Integers;
        let m = ExactMatrix::from_ints(z, &[vec![2, 0], vec![0, 3]]);
        assert!(m.solve(&SparseVec::from_ints(z, &[(0, 1)])).is_none());
        let x = m.solve(&SparseVec::from_ints(z, &[(0, 4), (1, 3)])).unwrap();
        assert_eq!(x, SparseVec::from_ints(z, &[(0, 2), (1, 1)]));
    }

    #[test]
    fn field_solve() {
        let q = GroundRing::Rationals;
        let m = ExactMatrix::from_ints(q, &[vec![1, 1], vec![1, -1]]);
        let b = SparseVec::from_ints(q, &[(0, 1)]);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        let sing = ExactMatrix::from_ints(q, &[vec![1, 1], vec![1, 1]]);
        assert!(sing.solve(&b).is_none());
    }
}
