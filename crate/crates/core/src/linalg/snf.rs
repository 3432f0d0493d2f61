//! Smith normal form over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::echelon::SparseElimination;
use super::matrix::ExactMatrix;
use super::ring::{GroundRing, Scalar};
use super::vector::SparseVec;
use super::LinalgError;

/// `u · m · v = d`, with `d` diagonal and `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
    pub u: ExactMatrix,
    pub v: ExactMatrix,
    pub v_inv: ExactMatrix,
    pub d: ExactMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

struct Dense {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    v_inv: Option<Vec<Vec<BigInt>>>,
}

fn ident(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

impl Dense {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.a {
            r.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for r in v.iter_mut() {
                r.swap(i, j);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(i, j);
        }
    }

    // row_i -= q * row_j
    fn row_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        let src = self.a[j].clone();
        for (x, s) in self.a[i].iter_mut().zip(&src) {
            *x -= q * s;
        }
        if let Some(u) = &mut self.u {
            let src = u[j].clone();
            for (x, s) in u[i].iter_mut().zip(&src) {
                *x -= q * s;
            }
        }
    }

    // col_i -= q * col_j
    fn col_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in &mut self.a {
            let s = r[j].clone();
            r[i] -= q * s;
        }
        if let Some(v) = &mut self.v {
            for r in v.iter_mut() {
                let s = r[j].clone();
                r[i] -= q * s;
            }
        }
        if let Some(vi) = &mut self.v_inv {
            // inverse of the column operation acts on rows: row_j += q * row_i
            let src = vi[i].clone();
            for (x, s) in vi[j].iter_mut().zip(&src) {
                *x += q * s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -x.clone();
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -x.clone();
            }
        }
    }

    fn run(&mut self) -> Vec<BigInt> {
        let (m, n) = (self.rows(), self.cols());
        let mut factors = Vec::new();
        for t in 0..m.min(n) {
            // smallest nonzero absolute value, ties by position
            let mut best: Option<(BigInt, usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let e = &self.a[i][j];
                    if !e.is_zero() && best.as_ref().map_or(true, |(b, _, _)| e.abs() < *b) {
                        best = Some((e.abs(), i, j));
                    }
                }
            }
            let Some((_, bi, bj)) = best else { break };
            self.swap_rows(t, bi);
            self.swap_cols(t, bj);
            loop {
                let mut again = false;
                for i in t + 1..m {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.row_axpy(i, t, &q);
                    if !self.a[i][t].is_zero() {
                        self.swap_rows(t, i);
                        again = true;
                    }
                }
                for j in t + 1..n {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.col_axpy(j, t, &q);
                    if !self.a[t][j].is_zero() {
                        self.swap_cols(t, j);
                        again = true;
                    }
                }
                if again {
                    continue;
                }
                // divisibility of the remaining block
                let p = self.a[t][t].clone();
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&self.a[i][j] % &p).is_zero()));
                match bad {
                    Some(i) => {
                        // row_t += row_i
                        self.row_axpy(t, i, &BigInt::from(-1));
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            factors.push(self.a[t][t].clone());
        }
        factors
    }
}

fn to_dense_int(m: &ExactMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_integer()).collect())
        .collect()
}

fn from_dense_int(d: &[Vec<BigInt>], rows: usize, cols: usize) -> ExactMatrix {
    let z = GroundRing::Integers;
    let data = d
        .iter()
        .map(|r| SparseVec::from_pairs(z, r.iter().enumerate().map(|(j, x)| (j, Scalar::from_integer(x.clone())))))
        .collect();
    ExactMatrix::new(z, rows, cols, data)
}

pub fn smith_normal_form(m: &ExactMatrix) -> Result<SmithForm, LinalgError> {
    if m.ring() != GroundRing::Integers {
        return Err(LinalgError::Ring(format!("Smith normal form needs ZZ, got {}", m.ring())));
    }
    let (r, c) = (m.rows(), m.cols());
    let mut dense = Dense { a: to_dense_int(m), u: Some(ident(r)), v: Some(ident(c)), v_inv: Some(ident(c)) };
    if r == 0 || c == 0 {
        dense.a = vec![vec![]; r];
    }
    let factors = dense.run();
    Ok(SmithForm {
        invariant_factors: factors,
        u: from_dense_int(dense.u.as_ref().unwrap(), r, r),
        v: from_dense_int(dense.v.as_ref().unwrap(), c, c),
        v_inv: from_dense_int(dense.v_inv.as_ref().unwrap(), c, c),
        d: from_dense_int(&dense.a, r, c),
    })
}

/// Nonzero invariant factors of an integer matrix given by sparse rows.
///
/// Unit pivots are eliminated sparsely first; only the non-unit remainder
/// goes through the dense algorithm.
pub fn invariant_factors(rows: Vec<SparseVec>, ncols: usize) -> Vec<BigInt> {
    let z = GroundRing::Integers;
    let elim = SparseElimination::run(z, rows, ncols, true);
    let mut factors = vec![BigInt::one(); elim.pivots];
    if !elim.remainder.is_empty() {
        let used: Vec<usize> = {
            let mut s: Vec<usize> = elim.remainder.iter().flat_map(|r| r.indices().collect::<Vec<_>>()).collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        let a: Vec<Vec<BigInt>> = elim
            .remainder
            .iter()
            .map(|r| used.iter().map(|&c| r.get(c).to_integer()).collect())
            .collect();
        let mut dense = Dense { a, u: None, v: None, v_inv: None };
        factors.extend(dense.run());
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_two_three() {
        let m = ExactMatrix::from_ints(GroundRing::Integers, &[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.invariant_factors, vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), ExactMatrix::identity(GroundRing::Integers, 2));
    }

    #[test]
    fn snf_rejects_fields() {
        let m = ExactMatrix::from_ints(GroundRing::Rationals, &[vec![2]]);
        assert!(matches!(smith_normal_form(&m), Err(LinalgError::Ring(_))));
    }

    #[test]
    fn sparse_factors_match_dense() {
        let z = GroundRing::Integers;
        let m = ExactMatrix::from_ints(z, &[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10], vec![2, 4, 6]]);
        let dense = smith_normal_form(&m).unwrap().invariant_factors;
        let sparse = invariant_factors(m.row_vecs().to_vec(), 3);
        assert_eq!(dense, sparse);
        assert_eq!(dense, vec![BigInt::from(1), BigInt::from(1), BigInt::from(3)]);
    }
}
