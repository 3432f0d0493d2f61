//! Expressing operations through binary generators.
//!
//! Every basis operation `e` of arity `n ≥ 3` is written as a combination of
//! terms `x(b(a_p, a_q), a_rest…)` where `x` is a basis operation of arity
//! `n−1`, `b` a basis operation of arity 2, `p < q`, and the remaining inputs
//! keep their order. Algebra structures are stored on binary generators
//! only; higher actions are evaluated through this recursion.

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Scalar, SparseVec};

use super::FinOperad;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryTerm {
    pub coef: Scalar,
    pub outer: usize,
    pub generator: usize,
    pub pair: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct BinaryDecomposition {
    /// `O(1)` basis elements as multiples of the unit.
    pub unary: Vec<Scalar>,
    /// `terms[n][e]` for arities `n ≥ 3` (entries below 3 are empty).
    pub terms: Vec<Vec<Vec<BinaryTerm>>>,
}

impl BinaryDecomposition {
    pub fn of(&self, n: usize, e: usize) -> &[BinaryTerm] {
        &self.terms[n][e]
    }
}

/// Permutation sending inputs to `(p, q, rest in order)`.
pub fn cherry_perm(n: usize, p: usize, q: usize) -> Vec<usize> {
    let mut s = vec![p, q];
    s.extend((0..n).filter(|&k| k != p && k != q));
    s
}

pub(super) fn decompose(op: &FinOperad) -> Result<BinaryDecomposition> {
    let ring = op.ring();
    let unit = op.unit();
    // O(1) must be spanned by the unit
    let c = match unit.coords.leading() {
        Some((0, c)) if op.dim(1) == 1 && unit.coords.nnz() == 1 => c.clone(),
        _ => return Err(Error::Operad("O(1) is not spanned by the unit".into())),
    };
    let unary = vec![ring.div(&ring.one(), &c).ok_or_else(|| Error::Operad("unit is not invertible".into()))?];
    let mut terms = vec![Vec::new(); op.max_arity() + 1];
    for n in 3..=op.max_arity() {
        let mut cands: Vec<(BinaryTerm, SparseVec)> = Vec::new();
        for p in 0..n {
            for q in p + 1..n {
                let sigma = cherry_perm(n, p, q);
                for outer in 0..op.dim(n - 1) {
                    for generator in 0..op.dim(2) {
                        let x = op.basis_element(n - 1, outer);
                        let b = op.basis_element(2, generator);
                        let v = op.act(&sigma, &op.partial_compose(&x, 0, &b)?).coords;
                        cands.push((BinaryTerm { coef: ring.one(), outer, generator, pair: (p, q) }, v));
                    }
                }
            }
        }
        let mut per_basis = Vec::new();
        let mut matrix: Option<ExactMatrix> = None;
        for e in 0..op.dim(n) {
            let target = SparseVec::unit(e);
            let neg = target.neg(ring);
            if let Some((t, v)) = cands.iter().find(|(_, v)| *v == target || *v == neg) {
                let coef = if *v == target { ring.one() } else { ring.from_int(-1) };
                per_basis.push(vec![BinaryTerm { coef, ..t.clone() }]);
                continue;
            }
            let m = matrix.get_or_insert_with(|| {
                let cols: Vec<SparseVec> = cands.iter().map(|(_, v)| v.clone()).collect();
                ExactMatrix::from_columns(ring, op.dim(n), &cols)
            });
            let sol = m.solve(&target).ok_or_else(|| {
                Error::Operad(format!("O({n}) is not generated by binary operations over {ring}"))
            })?;
            per_basis.push(
                sol.iter()
                    .map(|(k, c)| BinaryTerm { coef: c.clone(), ..cands[k].0.clone() })
                    .collect(),
            );
        }
        terms[n] = per_basis;
    }
    Ok(BinaryDecomposition { unary, terms })
}
