use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Check, Error, Result};
use crate::linalg::{BasedModule, SparseVec};
use crate::operad::FinOperad;

/// A model `Τ` over an operad, skeletonized to `Τ(n) = Τ({0, …, n−1}, 0)`:
/// input 0 is the marked one.
///
/// Two kinds of partial composition are stored: inserting an operation of
/// `O(n)` into an unmarked input `i ≥ 1`, and inserting an element of `Τ(n)`
/// into the marked input. Inputs are renumbered as for operadic `∘_i`.
#[derive(Clone, Debug)]
pub struct ModelData {
    operad: Arc<FinOperad>,
    spaces: Vec<BasedModule>,
    unit: SparseVec,
    /// `(m, i, n)` ↦ table at `x · dim O(n) + f` of `x ∘_i f`
    insert_operation: BTreeMap<(usize, usize, usize), Vec<SparseVec>>,
    /// `(m, n)` ↦ table at `x · dim Τ(n) + y` of `x ∘_0 y`
    insert_marked: BTreeMap<(usize, usize), Vec<SparseVec>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModelReport {
    pub unit: Check,
    pub associativity: Check,
}

impl ModelReport {
    pub fn passed(&self) -> bool {
        self.unit.passed() && self.associativity.passed()
    }
}

impl ModelData {
    /// The default model `Τ(n) = O(n)` with both compositions given by the
    /// operad.
    pub fn from_operad(operad: Arc<FinOperad>) -> Result<Self> {
        let big = operad.max_arity();
        let mut spaces = vec![BasedModule { ring: operad.ring(), labels: Vec::new() }];
        spaces.extend((1..=big).map(|n| operad.space(n).clone()));
        let mut insert_operation = BTreeMap::new();
        let mut insert_marked = BTreeMap::new();
        for m in 1..=big {
            for n in 1..=big + 1 - m {
                let table = |i: usize| -> Vec<SparseVec> {
                    let mut t = Vec::with_capacity(operad.dim(m) * operad.dim(n));
                    for x in 0..operad.dim(m) {
                        for f in 0..operad.dim(n) {
                            t.push(operad.compose_basis(m, i, x, n, f).clone());
                        }
                    }
                    t
                };
                insert_marked.insert((m, n), table(0));
                for i in 1..m {
                    insert_operation.insert((m, i, n), table(i));
                }
            }
        }
        let unit = operad.unit().coords;
        if operad.dim(1) == 0 {
            return Err(Error::Operad("the operad has no unit".into()));
        }
        Ok(ModelData { operad, spaces, unit, insert_operation, insert_marked })
    }

    pub fn operad(&self) -> &Arc<FinOperad> {
        &self.operad
    }

    pub fn max_arity(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn space(&self, n: usize) -> &BasedModule {
        &self.spaces[n]
    }

    pub fn dim(&self, n: usize) -> usize {
        self.spaces[n].rank()
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn set_unit(&mut self, unit: SparseVec) {
        self.unit = unit;
    }

    /// Overrides one entry of the marked composition table.
    pub fn set_marked_composition(&mut self, m: usize, n: usize, x: usize, y: usize, value: SparseVec) {
        let dn = self.dim(n);
        if let Some(t) = self.insert_marked.get_mut(&(m, n)) {
            t[x * dn + y] = value;
        }
    }

    /// `x ∘_i f` for `x ∈ Τ(m)`, `f ∈ O(n)`, `1 ≤ i < m`.
    pub fn compose_operation(&self, m: usize, x: &SparseVec, i: usize, n: usize, f: &SparseVec) -> SparseVec {
        let ring = self.operad.ring();
        let table = &self.insert_operation[&(m, i, n)];
        let dn = self.operad.dim(n);
        let mut out = SparseVec::new();
        for (a, c) in x.iter() {
            for (b, d) in f.iter() {
                out.add_scaled(ring, &ring.mul(c, d), &table[a * dn + b]);
            }
        }
        out
    }

    /// `x ∘_0 y` for `x ∈ Τ(m)`, `y ∈ Τ(n)`.
    pub fn compose_marked(&self, m: usize, x: &SparseVec, n: usize, y: &SparseVec) -> SparseVec {
        let ring = self.operad.ring();
        let table = &self.insert_marked[&(m, n)];
        let dn = self.dim(n);
        let mut out = SparseVec::new();
        for (a, c) in x.iter() {
            for (b, d) in y.iter() {
                out.add_scaled(ring, &ring.mul(c, d), &table[a * dn + b]);
            }
        }
        out
    }

    fn op_compose(&self, m: usize, f: &SparseVec, i: usize, n: usize, g: &SparseVec) -> SparseVec {
        let ring = self.operad.ring();
        let mut out = SparseVec::new();
        for (a, c) in f.iter() {
            for (b, d) in g.iter() {
                out.add_scaled(ring, &ring.mul(c, d), self.operad.compose_basis(m, i, a, n, b));
            }
        }
        out
    }

    /// Exhaustive unit and compatibility checks on basis elements.
    pub fn check_axioms(&self) -> ModelReport {
        let big = self.max_arity();
        let mut rep = ModelReport::default();
        let e = SparseVec::unit;
        let o_unit = self.operad.unit().coords;
        for n in 1..=big {
            for y in 0..self.dim(n) {
                let left = self.compose_marked(1, &self.unit, n, &e(y));
                rep.unit.record(left == e(y), || format!("1 ∘ {} in arity {n}", self.spaces[n].labels[y]));
                let right = self.compose_marked(n, &e(y), 1, &self.unit);
                rep.unit.record(right == e(y), || format!("{} ∘ 1 in arity {n}", self.spaces[n].labels[y]));
                for i in 1..n {
                    let v = self.compose_operation(n, &e(y), i, 1, &o_unit);
                    rep.unit.record(v == e(y), || format!("{} ∘_{i} id in arity {n}", self.spaces[n].labels[y]));
                }
            }
        }
        let label = |n: usize, x: usize| self.spaces[n].labels[x].clone();
        for m in 1..=big {
            for n in 1..=big + 1 - m {
                for p in 1..=big + 2 - m - n {
                    for x in 0..self.dim(m) {
                        for y in 0..self.dim(n) {
                            // marked insertions are associative
                            for z in 0..self.dim(p) {
                                let lhs = self.compose_marked(m + n - 1, &self.compose_marked(m, &e(x), n, &e(y)), p, &e(z));
                                let rhs = self.compose_marked(m, &e(x), n + p - 1, &self.compose_marked(n, &e(y), p, &e(z)));
                                rep.associativity.record(lhs == rhs, || {
                                    format!("({} ∘ {}) ∘ {} ≠ {} ∘ ({} ∘ {})", label(m, x), label(n, y), label(p, z), label(m, x), label(n, y), label(p, z))
                                });
                            }
                            // an operation inserted after a marked insertion
                            let xy = self.compose_marked(m, &e(x), n, &e(y));
                            for f in 0..self.operad.dim(p) {
                                for k in 1..m + n - 1 {
                                    let lhs = self.compose_operation(m + n - 1, &xy, k, p, &e(f));
                                    let rhs = if k < n {
                                        let yf = self.compose_operation(n, &e(y), k, p, &e(f));
                                        self.compose_marked(m, &e(x), n + p - 1, &yf)
                                    } else {
                                        let xf = self.compose_operation(m, &e(x), k - n + 1, p, &e(f));
                                        self.compose_marked(m + p - 1, &xf, n, &e(y))
                                    };
                                    rep.associativity.record(lhs == rhs, || {
                                        format!("({} ∘ {}) ∘_{k} {}", label(m, x), label(n, y), self.operad.space(p).labels[f])
                                    });
                                }
                            }
                        }
                        // two operations inserted into unmarked inputs
                        for f in 0..self.operad.dim(n) {
                            for i in 1..m {
                                let xf = self.compose_operation(m, &e(x), i, n, &e(f));
                                for g in 0..self.operad.dim(p) {
                                    for k in 0..n {
                                        let lhs = self.compose_operation(m + n - 1, &xf, i + k, p, &e(g));
                                        let fg = self.op_compose(n, &e(f), k, p, &e(g));
                                        let rhs = self.compose_operation(m, &e(x), i, n + p - 1, &fg);
                                        rep.associativity.record(lhs == rhs, || {
                                            format!("sequential insertion into {} at {i}, {k}", label(m, x))
                                        });
                                    }
                                    for j in i + 1..m {
                                        let lhs = self.compose_operation(m + n - 1, &xf, j + n - 1, p, &e(g));
                                        let xg = self.compose_operation(m, &e(x), j, p, &e(g));
                                        let rhs = self.compose_operation(m + p - 1, &xg, i, n, &e(f));
                                        rep.associativity.record(lhs == rhs, || {
                                            format!("parallel insertion into {} at {i}, {j}", label(m, x))
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        rep
    }
}
