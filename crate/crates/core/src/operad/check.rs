//! Exhaustive verification of the operad axioms on basis elements.

use std::fmt;

use crate::error::Check;
use crate::linalg::{LinearMap, SparseVec};
use crate::perm;

use super::{FinOperad, OperadElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub unit: Check,
    pub associativity: Check,
    pub equivariance: Check,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.unit.passed() && self.associativity.passed() && self.equivariance.passed()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, c) in [("unit", &self.unit), ("associativity", &self.associativity), ("equivariance", &self.equivariance)]
        {
            write!(f, "{name}: {} ({} checked)", c.verdict(), c.checked)?;
            if let Some(w) = &c.witness {
                write!(f, " witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn basis(op: &FinOperad, n: usize) -> Vec<OperadElement> {
    (0..op.dim(n)).map(|a| op.basis_element(n, a)).collect()
}

fn label(op: &FinOperad, x: &OperadElement) -> String {
    x.coords.display_with(&op.space(x.arity).labels)
}

fn comp(op: &FinOperad, f: &OperadElement, i: usize, g: &OperadElement) -> OperadElement {
    op.partial_compose(f, i, g).expect("arity checked by caller")
}

pub(super) fn check_axioms(op: &FinOperad) -> AxiomReport {
    AxiomReport { unit: check_unit(op), associativity: check_assoc(op), equivariance: check_equivariance(op) }
}

fn check_unit(op: &FinOperad) -> Check {
    let mut c = Check::default();
    let u = op.unit();
    for n in 1..=op.max_arity() {
        for f in basis(op, n) {
            let left = comp(op, &u, 0, &f);
            c.record(left == f, || format!("1 ∘_1 {} = {}", label(op, &f), label(op, &left)));
            for i in 0..n {
                let right = comp(op, &f, i, &u);
                c.record(right == f, || format!("{} ∘_{} 1 = {}", label(op, &f), i + 1, label(op, &right)));
            }
        }
    }
    c
}

fn check_assoc(op: &FinOperad) -> Check {
    let mut c = Check::default();
    let big = op.max_arity();
    for m in 1..=big {
        for n in 1..=big {
            for p in 1..=big {
                if m + n + p - 2 > big {
                    continue;
                }
                let (bf, bg, bh) = (basis(op, m), basis(op, n), basis(op, p));
                for f in &bf {
                    for g in &bg {
                        for h in &bh {
                            // sequential: (f ∘_i g) ∘_{i+j} h = f ∘_i (g ∘_j h)
                            for i in 0..m {
                                for j in 0..n {
                                    let l = comp(op, &comp(op, f, i, g), i + j, h);
                                    let r = comp(op, f, i, &comp(op, g, j, h));
                                    c.record(l == r, || {
                                        format!(
                                            "f={} g={} h={} i={} j={}: {} vs {}",
                                            label(op, f),
                                            label(op, g),
                                            label(op, h),
                                            i + 1,
                                            j + 1,
                                            label(op, &l),
                                            label(op, &r)
                                        )
                                    });
                                }
                            }
                            // parallel: (f ∘_i g) ∘_{k+n−1} h = (f ∘_k h) ∘_i g for i < k
                            for i in 0..m {
                                for k in i + 1..m {
                                    let l = comp(op, &comp(op, f, i, g), k + n - 1, h);
                                    let r = comp(op, &comp(op, f, k, h), i, g);
                                    c.record(l == r, || {
                                        format!(
                                            "f={} g={} h={} slots {},{}: {} vs {}",
                                            label(op, f),
                                            label(op, g),
                                            label(op, h),
                                            i + 1,
                                            k + 1,
                                            label(op, &l),
                                            label(op, &r)
                                        )
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    c
}

fn is_identity(l: &LinearMap) -> bool {
    l.images.iter().enumerate().all(|(i, v)| *v == SparseVec::unit(i))
}

/// Relabelling σ' with `(σ·f) ∘_i g = σ'·(f ∘_{σ⁻¹(i)} g)`.
fn outer_block_perm(sigma: &[usize], i: usize, n: usize) -> Vec<usize> {
    let m = sigma.len();
    let j = perm::inverse(sigma)[i];
    let mut out = vec![0; m + n - 1];
    for t in 0..n {
        out[j + t] = i + t;
    }
    for l in (0..m).filter(|&l| l != j) {
        let src = if l < j { l } else { l + n - 1 };
        let s = sigma[l];
        out[src] = if s < i { s } else { s + n - 1 };
    }
    out
}

/// Relabelling τ' with `f ∘_i (τ·g) = τ'·(f ∘_i g)`.
fn inner_block_perm(m: usize, i: usize, tau: &[usize]) -> Vec<usize> {
    let n = tau.len();
    let mut out = perm::identity(m + n - 1);
    for t in 0..n {
        out[i + t] = i + tau[t];
    }
    out
}

fn check_equivariance(op: &FinOperad) -> Check {
    let mut c = Check::default();
    let big = op.max_arity();
    // the transpositions satisfy the Coxeter relations of S_n
    for n in 2..=big {
        let ts = op.transpositions(n);
        for k in 0..n - 1 {
            let sq = ts[k].compose(&ts[k]).expect("square");
            c.record(is_identity(&sq), || format!("s_{k}² ≠ 1 in arity {n}"));
            for l in k + 1..n - 1 {
                let (a, b) = (&ts[k], &ts[l]);
                let ab = a.compose(b).unwrap();
                let rel = if l == k + 1 {
                    ab.compose(&ab).unwrap().compose(&ab).unwrap()
                } else {
                    ab.compose(&ab).unwrap()
                };
                c.record(is_identity(&rel), || format!("braid relation fails for s_{k}, s_{l} in arity {n}"));
            }
        }
    }
    for m in 1..=big {
        for n in 1..=big + 1 - m {
            let (bf, bg) = (basis(op, m), basis(op, n));
            for f in &bf {
                for g in &bg {
                    for i in 0..m {
                        for k in 0..m.saturating_sub(1) {
                            let s = perm::transposition(m, k);
                            let l = comp(op, &op.act(&s, f), i, g);
                            let j = perm::inverse(&s)[i];
                            let r = op.act(&outer_block_perm(&s, i, n), &comp(op, f, j, g));
                            c.record(l == r, || {
                                format!("(s_{}·{}) ∘_{} {}: {} vs {}", k + 1, label(op, f), i + 1, label(op, g), label(op, &l), label(op, &r))
                            });
                        }
                        for k in 0..n.saturating_sub(1) {
                            let t = perm::transposition(n, k);
                            let l = comp(op, f, i, &op.act(&t, g));
                            let r = op.act(&inner_block_perm(m, i, &t), &comp(op, f, i, g));
                            c.record(l == r, || {
                                format!("{} ∘_{} (s_{}·{}): {} vs {}", label(op, f), i + 1, k + 1, label(op, g), label(op, &l), label(op, &r))
                            });
                        }
                    }
                }
            }
        }
    }
    c
}
