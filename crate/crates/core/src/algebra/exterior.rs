use crate::linalg::{BasedModule, LinearMap, SparseVec};
use crate::perm;

/// `Λ^i` of a based module, with its inclusion into the `i`-th tensor power
/// as alternating sums. Tensor basis vectors `e_{a_0} ⊗ … ⊗ e_{a_{i−1}}` are
/// numbered `Σ a_k r^{i−1−k}`.
#[derive(Clone, Debug)]
pub struct ExteriorPower {
    pub module: BasedModule,
    pub tuples: Vec<Vec<usize>>,
    pub inclusion: LinearMap,
}

impl ExteriorPower {
    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.tuples.iter().position(|t| t == tuple)
    }
}

/// Strictly increasing `i`-tuples from `0..r`, in lexicographic order.
pub fn increasing_tuples(r: usize, i: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(r: usize, i: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == i {
            out.push(cur.clone());
            return;
        }
        for a in start..r {
            cur.push(a);
            rec(r, i, a + 1, cur, out);
            cur.pop();
        }
    }
    rec(r, i, 0, &mut cur, &mut out);
    out
}

pub(crate) fn tensor_index(r: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &a| acc * r + a)
}

/// Inverse of [`tensor_index`] for tuples of length `i`.
pub(crate) fn untensor(r: usize, i: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; i];
    for k in (0..i).rev() {
        t[k] = idx % r;
        idx /= r;
    }
    t
}

pub fn exterior_power(g: &BasedModule, i: usize) -> ExteriorPower {
    let ring = g.ring;
    let r = g.rank();
    let tuples = increasing_tuples(r, i);
    let perms = perm::all(i);
    let images = tuples
        .iter()
        .map(|t| {
            SparseVec::from_pairs(
                ring,
                perms.iter().map(|p| {
                    let permuted: Vec<usize> = p.iter().map(|&k| t[k]).collect();
                    (tensor_index(r, &permuted), ring.from_int(perm::sign(p)))
                }),
            )
        })
        .collect();
    let labels = tuples
        .iter()
        .map(|t| t.iter().map(|&a| g.labels[a].as_str()).collect::<Vec<_>>().join("∧"))
        .collect();
    ExteriorPower {
        module: BasedModule { ring, labels },
        inclusion: LinearMap::from_images(ring, r.pow(i as u32), images),
        tuples,
    }
}
