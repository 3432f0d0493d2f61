use std::collections::{BTreeMap, HashMap};

use crate::algebra::LieAlgebraData;
use crate::linalg::{GroundRing, Scalar};

/// Normal form of a word: coefficients of `t^e · m` keyed by `(e, m)` with
/// `m` a nondecreasing monomial.
pub type TNormalForm = BTreeMap<(usize, Vec<usize>), Scalar>;

fn accumulate<K: Ord>(ring: GroundRing, map: &mut BTreeMap<K, Scalar>, key: K, c: &Scalar) {
    let entry = map.entry(key).or_insert_with(|| ring.zero());
    *entry = ring.add(entry, c);
    // zero entries are dropped by the caller through `prune`
}

fn prune<K: Ord>(map: &mut BTreeMap<K, Scalar>) {
    map.retain(|_, c| !num_traits::Zero::is_zero(c));
}

/// Rewrites words in the generators of `g` by
/// `x_b x_a → x_a x_b + t [x_b, x_a]` for `b > a`, always at the leftmost
/// inversion, and drops powers of `t` above `max_t`.
///
/// Antisymmetry of the bracket is all that is used; for brackets failing
/// Jacobi the result depends on the order of rewriting from `t²` on.
#[derive(Debug)]
pub struct Straightener<'a> {
    g: &'a LieAlgebraData,
    max_t: usize,
    memo: HashMap<Vec<usize>, TNormalForm>,
}

impl<'a> Straightener<'a> {
    pub fn new(g: &'a LieAlgebraData, max_t: usize) -> Self {
        Straightener { g, max_t, memo: HashMap::new() }
    }

    pub fn bracket(&self) -> &LieAlgebraData {
        self.g
    }

    pub fn normal_form(&mut self, word: &[usize]) -> TNormalForm {
        if let Some(n) = self.memo.get(word) {
            return n.clone();
        }
        let out = match word.windows(2).position(|w| w[0] > w[1]) {
            None => TNormalForm::from([((0, word.to_vec()), self.g.ring().one())]),
            Some(p) => self.rewrite_at(word, p),
        };
        self.memo.insert(word.to_vec(), out.clone());
        out
    }

    /// One rewriting step at the inversion in positions `p, p + 1`,
    /// followed by normal forms of the resulting words.
    pub fn rewrite_at(&mut self, word: &[usize], p: usize) -> TNormalForm {
        assert!(word[p] > word[p + 1], "no inversion at position {p}");
        let ring = self.g.ring();
        let mut swapped = word.to_vec();
        swapped.swap(p, p + 1);
        let mut out = self.normal_form(&swapped);
        if self.max_t >= 1 {
            let bracket = self.g.bracket_basis(word[p], word[p + 1]).clone();
            for (k, c) in bracket.iter() {
                let mut w = word[..p].to_vec();
                w.push(k);
                w.extend_from_slice(&word[p + 2..]);
                for ((e, m), d) in self.normal_form(&w) {
                    if e < self.max_t {
                        accumulate(ring, &mut out, (e + 1, m), &ring.mul(c, &d));
                    }
                }
            }
        }
        prune(&mut out);
        out
    }
}

/// Sets `t = 1`.
pub fn at_t_one(ring: GroundRing, n: &TNormalForm) -> BTreeMap<Vec<usize>, Scalar> {
    let mut out = BTreeMap::new();
    for ((_, m), c) in n {
        accumulate(ring, &mut out, m.clone(), c);
    }
    prune(&mut out);
    out
}

/// The coefficient of `t^e`.
pub fn t_part(n: &TNormalForm, e: usize) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> + '_ {
    n.iter().filter(move |((f, _), _)| *f == e).map(|((_, m), c)| (m, c))
}
