//! Permutations of `{0, …, n−1}` in one-line notation: `p[k]` is the image of `k`.

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// All permutations of `n` letters in lexicographic order.
pub fn all(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p = identity(n);
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| p[k] < p[k + 1]) else {
            break;
        };
        let l = (k + 1..n).rev().find(|&l| p[k] < p[l]).unwrap();
        p.swap(k, l);
        p[k + 1..].reverse();
    }
    out
}

/// Lexicographic rank of a permutation among [`all`].
pub fn rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut r = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        r = r * (n - i) + smaller;
    }
    r
}

/// Inverse of [`rank`].
pub fn unrank(n: usize, mut r: usize) -> Perm {
    let mut fact = vec![1usize; n + 1];
    for k in 1..=n {
        fact[k] = fact[k - 1] * k;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = fact[n - 1 - i];
        out.push(pool.remove(r / f));
        r %= f;
    }
    out
}

/// `(a ∘ b)(k) = a(b(k))`
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&k| a[k]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (k, &v) in p.iter().enumerate() {
        inv[v] = k;
    }
    inv
}

pub fn sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

pub fn transposition(n: usize, k: usize) -> Perm {
    let mut p = identity(n);
    p.swap(k, k + 1);
    p
}

/// Indices `k₁, …, k_m` with `p = s_{k_m} ∘ … ∘ s_{k₁}`, where `s_k` swaps
/// `k` and `k+1`; acting by `p` means applying `s_{k₁}` first.
pub fn adjacent_word(p: &[usize]) -> Vec<usize> {
    let mut q = p.to_vec();
    let mut word = Vec::new();
    // bubble sort by position swaps: q ∘ s_{k₁} ∘ … ∘ s_{k_m} = id
    loop {
        let Some(k) = (0..q.len().saturating_sub(1)).find(|&k| q[k] > q[k + 1]) else {
            break;
        };
        q.swap(k, k + 1);
        word.push(k);
    }
    word
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_and_rank_agree() {
        let ps = all(4);
        assert_eq!(ps.len(), 24);
        for (i, p) in ps.iter().enumerate() {
            assert_eq!(rank(p), i);
            assert_eq!(&unrank(4, i), p);
        }
    }

    #[test]
    fn adjacent_word_reconstructs() {
        for p in all(4) {
            let mut acc = identity(4);
            for k in adjacent_word(&p) {
                acc = compose(&transposition(4, k), &acc);
            }
            assert_eq!(acc, p);
        }
    }

    #[test]
    fn sign_is_multiplicative() {
        for a in all(3) {
            for b in all(3) {
                assert_eq!(sign(&compose(&a, &b)), sign(&a) * sign(&b));
            }
        }
    }
}
