//! The commutative, associative and Lie operads.
//!
//! `ass(n)` has one basis operation per ordering of the inputs: the word
//! `w` stands for `a ↦ a_{w_0} a_{w_1} ⋯ a_{w_{n−1}}`. `lie(n)` is the span of
//! the left-normed brackets `[[…[x_0, x_{w_1}], …], x_{w_{n−1}}]` inside
//! `ass(n)`; coordinates are recovered from the coefficients of words that
//! start with input 0.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{BasedModule, GroundRing, LinearMap, SparseVec};
use crate::perm;

use super::{FinOperad, OperadKind};

pub fn build_standard(kind: OperadKind, unital: bool, ring: GroundRing, max_arity: usize) -> Result<FinOperad> {
    if max_arity == 0 {
        return Err(Error::Arity("max arity must be at least 1".into()));
    }
    match kind {
        OperadKind::Com => Ok(build_com(unital, ring, max_arity)),
        OperadKind::Ass => Ok(build_ass(unital, ring, max_arity)),
        OperadKind::Lie => {
            if unital {
                return Err(Error::Operad("the Lie operad has no unital variant".into()));
            }
            build_lie(ring, max_arity)
        }
        OperadKind::Custom => Err(Error::Operad("custom operads are built from tables".into())),
    }
}

fn build_com(unital: bool, ring: GroundRing, max_arity: usize) -> FinOperad {
    let spaces = (1..=max_arity)
        .map(|n| BasedModule { ring, labels: vec![format!("m{n}")] })
        .collect();
    let transpositions = (1..=max_arity)
        .map(|n| (0..n - 1).map(|_| LinearMap::identity(ring, 1)).collect())
        .collect();
    let mut comps = BTreeMap::new();
    for m in 1..=max_arity {
        for n in 1..=max_arity + 1 - m {
            for i in 0..m {
                comps.insert((m, i, n), vec![SparseVec::unit(0)]);
            }
        }
    }
    FinOperad::from_parts(OperadKind::Com, unital, ring, spaces, transpositions, SparseVec::unit(0), comps)
        .expect("well-formed tables")
}

pub(crate) fn word_label(w: &[usize]) -> String {
    w.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(if w.len() > 9 { "," } else { "" })
}

/// Substitutes word `g` into letter `i` of word `f`.
pub(crate) fn substitute_word(f: &[usize], i: usize, g: &[usize]) -> Vec<usize> {
    let n = g.len();
    let mut out = Vec::with_capacity(f.len() + n - 1);
    for &l in f {
        if l == i {
            out.extend(g.iter().map(|&x| x + i));
        } else if l > i {
            out.push(l + n - 1);
        } else {
            out.push(l);
        }
    }
    out
}

fn ass_transpositions(ring: GroundRing, n: usize, words: &[Vec<usize>]) -> Vec<LinearMap> {
    (0..n.saturating_sub(1))
        .map(|k| {
            let s = perm::transposition(n, k);
            let images = words.iter().map(|w| SparseVec::unit(perm::rank(&perm::compose(&s, w)))).collect();
            LinearMap::from_images(ring, words.len(), images)
        })
        .collect()
}

fn build_ass(unital: bool, ring: GroundRing, max_arity: usize) -> FinOperad {
    let words: Vec<Vec<Vec<usize>>> = (1..=max_arity).map(perm::all).collect();
    let spaces = words
        .iter()
        .map(|ws| BasedModule { ring, labels: ws.iter().map(|w| word_label(w)).collect() })
        .collect();
    let transpositions = (1..=max_arity).map(|n| ass_transpositions(ring, n, &words[n - 1])).collect();
    let mut comps = BTreeMap::new();
    for m in 1..=max_arity {
        for n in 1..=max_arity + 1 - m {
            for i in 0..m {
                let mut table = Vec::with_capacity(words[m - 1].len() * words[n - 1].len());
                for f in &words[m - 1] {
                    for g in &words[n - 1] {
                        table.push(SparseVec::unit(perm::rank(&substitute_word(f, i, g))));
                    }
                }
                comps.insert((m, i, n), table);
            }
        }
    }
    FinOperad::from_parts(OperadKind::Ass, unital, ring, spaces, transpositions, SparseVec::unit(0), comps)
        .expect("well-formed tables")
}

/// Basis words of `lie(n)`: input 0 followed by an ordering of `1..n`.
fn lie_words(n: usize) -> Vec<Vec<usize>> {
    perm::all(n - 1)
        .into_iter()
        .map(|p| std::iter::once(0).chain(p.into_iter().map(|x| x + 1)).collect())
        .collect()
}

fn lie_label(w: &[usize]) -> String {
    let mut s = (w[0] + 1).to_string();
    for &x in &w[1..] {
        s = format!("[{s},{}]", x + 1);
    }
    s
}

/// Expansion of a left-normed bracket into `ass(n)`.
fn expand_bracket(ring: GroundRing, w: &[usize]) -> SparseVec {
    let mut terms: Vec<(Vec<usize>, i64)> = vec![(vec![w[0]], 1)];
    for &y in &w[1..] {
        let mut next = Vec::with_capacity(terms.len() * 2);
        for (u, c) in terms {
            let mut right = u.clone();
            right.push(y);
            let mut left = vec![y];
            left.extend(&u);
            next.push((right, c));
            next.push((left, -c));
        }
        terms = next;
    }
    SparseVec::from_pairs(ring, terms.into_iter().map(|(u, c)| (perm::rank(&u), ring.from_int(c))))
}

struct LieEmbedding {
    ring: GroundRing,
    // expansion of each lie(n) basis element in ass(n)
    expansions: Vec<Vec<SparseVec>>,
    words: Vec<Vec<Vec<usize>>>,
}

impl LieEmbedding {
    fn expand(&self, n: usize, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, c) in v.iter() {
            out.add_scaled(self.ring, c, &self.expansions[n - 1][a]);
        }
        out
    }

    /// Coordinates of an `ass(n)` element lying in the Lie span.
    fn reexpress(&self, n: usize, v: &SparseVec) -> Result<SparseVec> {
        let mut coords = SparseVec::new();
        for (a, c) in v.iter() {
            let w = &self.words[n - 1][a];
            if w[0] == 0 {
                let rest: Vec<usize> = w[1..].iter().map(|x| x - 1).collect();
                coords.add_at(self.ring, perm::rank(&rest), c);
            }
        }
        if self.expand(n, &coords) != *v {
            return Err(Error::Ring(format!(
                "an element of ass({n}) failed to re-express in the left-normed Lie basis over {}",
                self.ring
            )));
        }
        Ok(coords)
    }
}

fn build_lie(ring: GroundRing, max_arity: usize) -> Result<FinOperad> {
    let words: Vec<Vec<Vec<usize>>> = (1..=max_arity).map(perm::all).collect();
    let lw: Vec<Vec<Vec<usize>>> = (1..=max_arity).map(lie_words).collect();
    let emb = LieEmbedding {
        ring,
        expansions: lw.iter().map(|ws| ws.iter().map(|w| expand_bracket(ring, w)).collect()).collect(),
        words: words.clone(),
    };
    let spaces = lw
        .iter()
        .map(|ws| BasedModule { ring, labels: ws.iter().map(|w| lie_label(w)).collect() })
        .collect();
    let mut transpositions = Vec::new();
    for n in 1..=max_arity {
        let ass_t = ass_transpositions(ring, n, &words[n - 1]);
        let mut ts = Vec::new();
        for t in &ass_t {
            let images = emb.expansions[n - 1]
                .iter()
                .map(|e| emb.reexpress(n, &t.apply(e)))
                .collect::<Result<Vec<_>>>()?;
            ts.push(LinearMap::from_images(ring, lw[n - 1].len(), images));
        }
        transpositions.push(ts);
    }
    let mut comps = BTreeMap::new();
    for m in 1..=max_arity {
        for n in 1..=max_arity + 1 - m {
            for i in 0..m {
                let mut table = Vec::new();
                for ef in &emb.expansions[m - 1] {
                    for eg in &emb.expansions[n - 1] {
                        let mut composed = SparseVec::new();
                        for (a, ca) in ef.iter() {
                            for (b, cb) in eg.iter() {
                                let w = substitute_word(&words[m - 1][a], i, &words[n - 1][b]);
                                composed.add_at(ring, perm::rank(&w), &ring.mul(ca, cb));
                            }
                        }
                        table.push(emb.reexpress(m + n - 1, &composed)?);
                    }
                }
                comps.insert((m, i, n), table);
            }
        }
    }
    FinOperad::from_parts(OperadKind::Lie, false, ring, spaces, transpositions, SparseVec::unit(0), comps)
}

/// Expansion of `lie(n)` basis elements into `ass(n)` coordinates.
pub fn lie_to_ass(ring: GroundRing, n: usize) -> Vec<SparseVec> {
    lie_words(n).iter().map(|w| expand_bracket(ring, w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_expansion_two_letters() {
        let q = GroundRing::Rationals;
        let e = expand_bracket(q, &[0, 1]);
        // words 01 and 10 have ranks 0 and 1
        assert_eq!(e, SparseVec::from_ints(q, &[(0, 1), (1, -1)]));
    }

    #[test]
    fn lie_labels_are_left_normed() {
        assert_eq!(lie_label(&[0, 2, 1]), "[[1,3],2]");
    }

    #[test]
    fn substitution_shifts_letters() {
        // f = 1 0, plug g = 1 0 into input 0
        assert_eq!(substitute_word(&[1, 0], 0, &[1, 0]), vec![2, 1, 0]);
    }
}
