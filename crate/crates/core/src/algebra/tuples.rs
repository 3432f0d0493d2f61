/// All `len`-tuples of basis indices whose degrees sum to at most
/// `max_total`, in lexicographic order.
pub fn tuples_with_degree_at_most(degrees: &[usize], len: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(degrees: &[usize], len: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for (i, &d) in degrees.iter().enumerate() {
            if d <= budget {
                cur.push(i);
                rec(degrees, len, budget - d, cur, out);
                cur.pop();
            }
        }
    }
    rec(degrees, len, max_total, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_small_case() {
        // degrees 0, 1, 1: pairs of total degree <= 1 are (0,0), (0,1), (0,2), (1,0), (2,0)
        assert_eq!(tuples_with_degree_at_most(&[0, 1, 1], 2, 1).len(), 5);
    }
}
