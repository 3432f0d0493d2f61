use std::collections::BTreeMap;

use crate::algebra::increasing_tuples;
use crate::error::Result;
use crate::linalg::{BasedModule, LinearMap, SparseVec};

use super::{ChainComplex, Direction};

/// `S(g) ⊗ Λ^i(g) ⊗ S(g)` for `i = 0, …, rank g`, truncated at internal
/// degree `D`, with
/// `d(a ⊗ x_1∧…∧x_i ⊗ b) = Σ_j (−1)^{j−1} (a x_j ⊗ …x̂_j… ⊗ b − a ⊗ …x̂_j… ⊗ x_j b)`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    /// Positions `0..=rank`.
    pub complex: ChainComplex,
    /// The same complex followed by the multiplication `S ⊗ S → S` at
    /// position `−1`.
    pub augmented: ChainComplex,
    /// Monomials of `S(g)` as sorted generator indices, by increasing degree.
    pub monomials: Vec<Vec<usize>>,
}

fn monomials_up_to(r: usize, max_degree: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for m in &layer {
            let start = m.last().copied().unwrap_or(0);
            for x in start..r {
                let mut n = m.clone();
                n.push(x);
                next.push(n);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn times(m: &[usize], x: usize) -> Vec<usize> {
    let mut out = m.to_vec();
    let at = out.partition_point(|&y| y <= x);
    out.insert(at, x);
    out
}

fn merge(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = [a, b].concat();
    out.sort_unstable();
    out
}

pub fn koszul_complex(g: &BasedModule, max_degree: usize) -> Result<KoszulComplex> {
    let ring = g.ring;
    let r = g.rank();
    let monomials = monomials_up_to(r, max_degree);
    let mono_index: BTreeMap<&[usize], usize> = monomials.iter().enumerate().map(|(k, m)| (m.as_slice(), k)).collect();
    let mono_label = |m: &[usize]| -> String {
        if m.is_empty() {
            "1".into()
        } else {
            m.iter().map(|&x| g.labels[x].as_str()).collect()
        }
    };
    // basis of each term: (a, w, b)
    let mut bases: Vec<Vec<(usize, Vec<usize>, usize)>> = Vec::new();
    for i in 0..=r {
        let mut basis = Vec::new();
        for w in increasing_tuples(r, i) {
            for (a, ma) in monomials.iter().enumerate() {
                for (b, mb) in monomials.iter().enumerate() {
                    if ma.len() + i + mb.len() <= max_degree {
                        basis.push((a, w.clone(), b));
                    }
                }
            }
        }
        basis.sort_by_key(|(a, w, b)| (monomials[*a].len() + w.len() + monomials[*b].len(), w.clone(), *a, *b));
        bases.push(basis);
    }
    let index: Vec<BTreeMap<(usize, Vec<usize>, usize), usize>> =
        bases.iter().map(|b| b.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect()).collect();
    let mut out = Vec::with_capacity(r + 1);
    for i in 0..=r {
        let target_dim = if i == 0 { 0 } else { bases[i - 1].len() };
        let images = bases[i]
            .iter()
            .map(|(a, w, b)| {
                let mut v = SparseVec::new();
                if i == 0 {
                    return v;
                }
                for (j, &x) in w.iter().enumerate() {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    let mut rest = w.clone();
                    rest.remove(j);
                    let ax = mono_index[times(&monomials[*a], x).as_slice()];
                    let xb = mono_index[times(&monomials[*b], x).as_slice()];
                    v.add_at(ring, index[i - 1][&(ax, rest.clone(), *b)], &ring.from_int(sign));
                    v.add_at(ring, index[i - 1][&(*a, rest, xb)], &ring.from_int(-sign));
                }
                v
            })
            .collect();
        out.push(LinearMap::from_images(ring, target_dim, images));
    }
    let terms: Vec<BasedModule> = bases
        .iter()
        .map(|basis| BasedModule {
            ring,
            labels: basis
                .iter()
                .map(|(a, w, b)| {
                    let wedge: Vec<&str> = w.iter().map(|&x| g.labels[x].as_str()).collect();
                    format!("{}⊗{}⊗{}", mono_label(&monomials[*a]), if w.is_empty() { "1".into() } else { wedge.join("∧") }, mono_label(&monomials[*b]))
                })
                .collect(),
        })
        .collect();
    let internal: Vec<Vec<i64>> = bases
        .iter()
        .map(|basis| basis.iter().map(|(a, w, b)| (monomials[*a].len() + w.len() + monomials[*b].len()) as i64).collect())
        .collect();
    let complex = ChainComplex::new(ring, Direction::Chain, 0, terms.clone(), Some(internal.clone()), out.clone())?;

    let s = BasedModule { ring, labels: monomials.iter().map(|m| mono_label(m)).collect() };
    let mut aug_out = vec![LinearMap::zero(ring, monomials.len(), 0)];
    aug_out.push(LinearMap::from_images(
        ring,
        monomials.len(),
        bases[0].iter().map(|(a, _, b)| SparseVec::unit(mono_index[merge(&monomials[*a], &monomials[*b]).as_slice()])).collect(),
    ));
    aug_out.extend(out.into_iter().skip(1));
    let mut aug_terms = vec![s];
    aug_terms.extend(terms);
    let mut aug_internal = vec![monomials.iter().map(|m| m.len() as i64).collect()];
    aug_internal.extend(internal);
    let augmented = ChainComplex::new(ring, Direction::Chain, -1, aug_terms, Some(aug_internal), aug_out)?;
    Ok(KoszulComplex { complex, augmented, monomials })
}
