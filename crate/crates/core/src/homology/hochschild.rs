use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use crate::algebra::{tuples_with_degree_at_most, GradedAlgebra};
use crate::amodule::AModule;
use crate::error::{Error, Result};
use crate::linalg::{BasedModule, LinearMap, SparseVec};
use crate::operad::OperadKind;

use super::{ChainComplex, Direction};

/// Normalized Hochschild cochains `C^n = Hom(Ā^{⊗n}, M)` in one internal
/// degree (or all of them), where `Ā` is spanned by the non-unit basis
/// vectors. Coordinates of `C^n` are pairs `(tuple, target basis vector)`.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    pub complex: ChainComplex,
    bases: Vec<Vec<(Vec<usize>, usize)>>,
    lo: usize,
}

impl HochschildComplex {
    /// Basis of `C^n` as `(tuple of algebra basis indices, module basis index)`.
    pub fn basis(&self, n: usize) -> &[(Vec<usize>, usize)] {
        &self.bases[n - self.lo]
    }
}

/// The complex with terms `C^n` for `n` in `positions` (the differential out
/// of the last term is omitted, so homology is meaningful below it) and
/// `(δf)(a_1, …, a_{n+1}) = a_1 f(a_2, …) + Σ_i (−1)^i f(…, a_i a_{i+1}, …)
/// + (−1)^{n+1} f(a_1, …, a_n) a_{n+1}`.
///
/// With `degree = Some(d)` only cochains raising degree by `d` are kept and
/// `M` is read as the honest quotient `M / M_{>top}`. Every product of two
/// arguments that can occur must lie inside the algebra's truncation
/// (`E_TRUNC` otherwise). Multiplication is generator 0 of `O(2)`, so
/// commutative algebras and modules are treated as symmetric bimodules.
pub fn hochschild_cochain_complex(
    a: &GradedAlgebra,
    m: &AModule,
    positions: RangeInclusive<usize>,
    degree: Option<i64>,
) -> Result<HochschildComplex> {
    let op = a.operad();
    if !matches!(op.kind(), OperadKind::Ass | OperadKind::Com) || !op.is_unital() {
        return Err(Error::Operad(format!("Hochschild cochains need a unital associative algebra, got {}", op.name())));
    }
    let u = a.unit().ok_or_else(|| Error::Operad("the algebra has no unit".into()))?;
    if m.algebra().labels() != a.labels() || m.algebra().dim() != a.dim() {
        return Err(Error::Setup("the module is over a different algebra".into()));
    }
    let ring = a.ring();
    let abar: Vec<usize> = (0..a.dim()).filter(|&x| x != u).collect();
    let bar_deg: Vec<usize> = abar.iter().map(|&x| a.degree(x)).collect();
    let cap = degree.map(|d| m.top() - d);
    if let Some(c) = cap {
        if c < 0 {
            return Err(Error::Degree(format!("no cochains of degree {} into a module with top {}", degree.unwrap(), m.top())));
        }
    }
    // every adjacent product that can occur must be exact
    for (i, &p) in abar.iter().enumerate() {
        for &q in &abar[i..] {
            let d = a.degree(p) + a.degree(q);
            if cap.is_none_or(|c| d as i64 <= c) && d > a.max_degree() {
                return Err(Error::Trunc(format!(
                    "products of degree {d} needed but the algebra is truncated at {}",
                    a.max_degree()
                )));
            }
        }
    }
    let (lo, hi) = (*positions.start(), *positions.end());
    let tuples = |n: usize| -> Vec<Vec<usize>> {
        let idx = match cap {
            Some(c) => tuples_with_degree_at_most(&bar_deg, n, c as usize),
            None => tuples_with_degree_at_most(&vec![0; abar.len()], n, 0),
        };
        idx.into_iter().map(|t| t.into_iter().map(|k| abar[k]).collect()).collect()
    };
    let tuple_degree = |t: &[usize]| t.iter().map(|&x| a.degree(x) as i64).sum::<i64>();
    let targets = |t: &[usize]| -> Vec<usize> {
        match degree {
            Some(d) => m.basis_of_degree(tuple_degree(t) + d),
            None => (0..m.dim()).collect(),
        }
    };
    let bases: Vec<Vec<(Vec<usize>, usize)>> = (lo..=hi)
        .map(|n| tuples(n).into_iter().flat_map(|t| targets(&t).into_iter().map(move |w| (t.clone(), w))).collect())
        .collect();
    let index: Vec<BTreeMap<&(Vec<usize>, usize), usize>> =
        bases.iter().map(|b| b.iter().enumerate().map(|(k, key)| (key, k)).collect()).collect();

    // (p, q, c) with p q = c z + …, for z in Ā
    let mut factorizations: BTreeMap<usize, Vec<(usize, usize, crate::linalg::Scalar)>> = BTreeMap::new();
    for &p in &abar {
        for &q in &abar {
            if a.degree(p) + a.degree(q) > a.max_degree() {
                continue;
            }
            for (z, c) in a.mul_basis(0, p, q).iter() {
                if z != u {
                    factorizations.entry(z).or_default().push((p, q, c.clone()));
                }
            }
        }
    }

    let mut out = Vec::new();
    for n in lo..hi {
        let k = n - lo;
        let next = &index[k + 1];
        let images = bases[k]
            .iter()
            .map(|(t, w)| {
                let mut v = SparseVec::new();
                let mut put = |s: Vec<usize>, vals: &SparseVec, sign: i64| {
                    for (z, c) in vals.iter() {
                        if let Some(&row) = next.get(&(s.clone(), z)) {
                            let c = if sign < 0 { ring.neg(c) } else { c.clone() };
                            v.add_at(ring, row, &c);
                        }
                    }
                };
                for &x in &abar {
                    let mut s = vec![x];
                    s.extend_from_slice(t);
                    put(s, m.act_left(0, x, *w), 1);
                    let mut s = t.clone();
                    s.push(x);
                    put(s, m.act_right(0, x, *w), if (n + 1) % 2 == 0 { 1 } else { -1 });
                }
                for (i, &ti) in t.iter().enumerate() {
                    let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                    for (p, q, c) in factorizations.get(&ti).into_iter().flatten() {
                        let mut s = t[..i].to_vec();
                        s.push(*p);
                        s.push(*q);
                        s.extend_from_slice(&t[i + 1..]);
                        let val = SparseVec::unit(*w).scaled(ring, c);
                        put(s, &val, sign);
                    }
                }
                v
            })
            .collect();
        out.push(LinearMap::from_images(ring, bases[k + 1].len(), images));
    }
    out.push(LinearMap::zero(ring, bases[hi - lo].len(), 0));
    let terms: Vec<BasedModule> = bases
        .iter()
        .map(|b| BasedModule {
            ring,
            labels: b
                .iter()
                .map(|(t, w)| {
                    let args: Vec<&str> = t.iter().map(|&x| a.labels()[x].as_str()).collect();
                    format!("[{}]↦{}", args.join("|"), m.labels()[*w])
                })
                .collect(),
        })
        .collect();
    let complex = ChainComplex::new(ring, Direction::Cochain, lo as i64, terms, None, out)?;
    Ok(HochschildComplex { complex, bases, lo })
}
