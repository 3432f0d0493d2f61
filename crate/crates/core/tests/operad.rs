use operad_forge::linalg::{GroundRing, SparseVec};
use operad_forge::operad::{build_standard, OperadKind};
use operad_forge::perm;
use proptest::prelude::*;

const RINGS: [GroundRing; 3] = [GroundRing::Rationals, GroundRing::PrimeField(5), GroundRing::Integers];

#[test]
fn standard_ranks() {
    let q = GroundRing::Rationals;
    assert_eq!(build_standard(OperadKind::Com, false, q, 4).unwrap().ranks(), vec![1, 1, 1, 1]);
    assert_eq!(build_standard(OperadKind::Ass, false, q, 3).unwrap().ranks(), vec![1, 2, 6]);
    assert_eq!(build_standard(OperadKind::Lie, false, q, 4).unwrap().ranks(), vec![1, 1, 2, 6]);
}

#[test]
fn lie_ranks_match_commutator_span() {
    // independent count: rank of the span of all bracket expansions of all
    // bracketings inside ass(n), computed by brute force
    let q = GroundRing::Rationals;
    let lie = build_standard(OperadKind::Lie, false, q, 5).unwrap();
    for n in 1..=5 {
        let mut rows = Vec::new();
        for w in perm::all(n) {
            // left-normed bracket in every letter order, not only those starting with 0
            let mut terms: Vec<(Vec<usize>, i64)> = vec![(vec![w[0]], 1)];
            for &y in &w[1..] {
                let mut next = Vec::new();
                for (u, c) in terms {
                    let mut r = u.clone();
                    r.push(y);
                    let mut l = vec![y];
                    l.extend(&u);
                    next.push((r, c));
                    next.push((l, -c));
                }
                terms = next;
            }
            rows.push(SparseVec::from_pairs(q, terms.into_iter().map(|(u, c)| (perm::rank(&u), q.from_int(c)))));
        }
        assert_eq!(operad_forge::linalg::rank_of_rows(q, rows), lie.dim(n), "arity {n}");
    }
}

#[test]
fn axioms_hold_for_all_standard_operads() {
    for ring in RINGS {
        for kind in [OperadKind::Com, OperadKind::Ass, OperadKind::Lie] {
            let op = build_standard(kind, false, ring, 5).unwrap();
            let report = op.check_axioms();
            assert!(report.passed(), "{kind:?} over {ring}: {report}");
        }
    }
}

#[test]
fn ass_rank_is_factorial() {
    let op = build_standard(OperadKind::Ass, true, GroundRing::Integers, 5).unwrap();
    assert_eq!(op.ranks(), vec![1, 2, 6, 24, 120]);
}

#[test]
fn perturbed_composition_is_caught() {
    let q = GroundRing::Rationals;
    let mut op = build_standard(OperadKind::Ass, false, q, 3).unwrap();
    let mut v = op.compose_basis(2, 0, 0, 2, 0).clone();
    v.add_at(q, 0, &q.one());
    op.set_composition((2, 0, 2), 0, 0, v);
    let report = op.check_axioms();
    assert!(!report.associativity.passed() || !report.equivariance.passed());
    assert!(!report.passed());
}

#[test]
fn bracket_into_first_input_of_bracket() {
    let op = build_standard(OperadKind::Lie, false, GroundRing::Rationals, 3).unwrap();
    let b = op.basis_element(2, 0);
    let r = op.partial_compose(&b, 0, &b).unwrap();
    assert_eq!(r.coords, SparseVec::unit(0));
    assert_eq!(op.space(3).labels[0], "[[1,2],3]");
}

#[test]
fn unit_is_neutral() {
    let op = build_standard(OperadKind::Ass, false, GroundRing::Rationals, 4).unwrap();
    let f = op.basis_element(3, 4);
    assert_eq!(op.partial_compose(&op.unit(), 0, &f).unwrap(), f);
}

#[test]
fn base_change_preserves_ranks() {
    let z = GroundRing::Integers;
    let lie = build_standard(OperadKind::Lie, false, z, 4).unwrap();
    let lie5 = lie.base_change(GroundRing::PrimeField(5)).unwrap();
    assert_eq!(lie5.ranks(), vec![1, 1, 2, 6]);
    let ass = build_standard(OperadKind::Ass, false, z, 4).unwrap();
    let ass2 = ass.base_change(GroundRing::PrimeField(2)).unwrap();
    assert_eq!(ass2.ranks(), vec![1, 2, 6, 24]);
    let com = build_standard(OperadKind::Com, false, GroundRing::Rationals, 3).unwrap();
    assert_eq!(com.base_change(GroundRing::Rationals).unwrap().ranks(), vec![1, 1, 1]);
    let e = com.base_change(GroundRing::Integers).unwrap_err();
    assert_eq!(e.code(), "E_RINGMAP");
}

#[test]
fn compose_rejects_large_arity() {
    let op = build_standard(OperadKind::Com, false, GroundRing::Rationals, 3).unwrap();
    let f = op.basis_element(3, 0);
    assert_eq!(op.partial_compose(&f, 0, &f).unwrap_err().code(), "E_ARITY");
}

#[test]
fn binary_decomposition_exists_for_standard_operads() {
    for kind in [OperadKind::Com, OperadKind::Ass, OperadKind::Lie] {
        let op = build_standard(kind, false, GroundRing::Integers, 5).unwrap();
        let d = op.binary_decomposition().unwrap();
        for n in 3..=5 {
            assert_eq!(d.terms[n].len(), op.dim(n));
            assert!(d.terms[n].iter().all(|t| !t.is_empty()));
        }
    }
}

proptest! {
    #[test]
    fn action_is_a_group_action(a in 0usize..24, b in 0usize..24, e in 0usize..6) {
        let op = build_standard(OperadKind::Lie, false, GroundRing::Integers, 4).unwrap();
        let ps = perm::all(4);
        let x = op.basis_element(4, e);
        let lhs = op.act(&perm::compose(&ps[a], &ps[b]), &x);
        let rhs = op.act(&ps[a], &op.act(&ps[b], &x));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn lie_embeds_in_ass() {
    use operad_forge::linalg::rank_of_rows;
    use operad_forge::operad::lie_to_ass;
    let q = GroundRing::Rationals;
    for n in 2..=5 {
        let images = lie_to_ass(q, n);
        let factorial: usize = (1..n).product();
        assert_eq!(images.len(), factorial);
        assert_eq!(rank_of_rows(q, images.iter().cloned()), factorial, "arity {n}");
        // brackets expand with coefficient sum zero
        for v in &images {
            let total = v.iter().fold(q.zero(), |acc, (_, c)| q.add(&acc, c));
            assert_eq!(total, q.zero());
        }
    }
}
