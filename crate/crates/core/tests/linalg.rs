use operad_forge::linalg::{
    coinvariants, coinvariants_by_elimination, coinvariants_of_module, BasedModule, ExactMatrix, GroundRing,
    LinearMap, SparseVec,
};
use proptest::prelude::*;

fn ring_strategy() -> impl Strategy<Value = GroundRing> {
    prop_oneof![
        Just(GroundRing::Rationals),
        Just(GroundRing::Integers),
        Just(GroundRing::prime_field(2).unwrap()),
        Just(GroundRing::prime_field(5).unwrap()),
    ]
}

/// Random signed permutations of `0..dim`.
fn signed_perms(dim: usize, count: usize) -> impl Strategy<Value = Vec<Vec<(usize, bool)>>> {
    let one = (Just((0..dim).collect::<Vec<_>>()).prop_shuffle(), proptest::collection::vec(any::<bool>(), dim))
        .prop_map(|(p, s)| p.into_iter().zip(s).collect::<Vec<_>>());
    proptest::collection::vec(one, 0..=count)
}

fn to_map(ring: GroundRing, perm: &[(usize, bool)]) -> LinearMap {
    let images = perm
        .iter()
        .map(|&(i, neg)| SparseVec::from_ints(ring, &[(i, if neg { -1 } else { 1 })]))
        .collect();
    LinearMap::from_images(ring, perm.len(), images)
}

fn labels(r: usize) -> BasedModule {
    BasedModule { ring: GroundRing::Rationals, labels: (0..r).map(|k| format!("b{k}")).collect() }
}

#[test]
fn coinvariants_examples() {
    let q = GroundRing::Rationals;
    let (m, p) = coinvariants_of_module(&labels(3), &[ExactMatrix::identity(q, 3)]).unwrap();
    assert_eq!(m.rank(), 3);
    assert_eq!(p, ExactMatrix::identity(q, 3));
    let swap = ExactMatrix::from_ints(q, &[vec![0, 1], vec![1, 0]]);
    let (m, p) = coinvariants_of_module(&labels(2), &[swap]).unwrap();
    assert_eq!(m.labels, vec!["b0".to_string()]);
    assert_eq!(p, ExactMatrix::from_ints(q, &[vec![1, 1]]));
    let bad = coinvariants_of_module(&labels(2), &[ExactMatrix::identity(q, 3)]).unwrap_err();
    assert!(matches!(bad, operad_forge::linalg::LinalgError::Dim(_)));
}

proptest! {
    #[test]
    fn orbit_shortcut_matches_elimination(ring in ring_strategy(), dim in 1usize..7, seed in signed_perms(6, 3)) {
        let gens: Vec<LinearMap> = seed.iter().map(|p| {
            let restricted: Vec<(usize, bool)> = p.iter().filter(|&&(i, _)| i < dim).copied().collect();
            restricted
        }).filter(|p| p.len() == dim).map(|p| to_map(ring, &p)).collect();
        let fast = coinvariants(ring, dim, &gens).unwrap();
        let slow = coinvariants_by_elimination(ring, dim, &gens).unwrap();
        prop_assert_eq!(fast.rank, slow.rank);
        prop_assert_eq!(&fast.torsion, &slow.torsion);
        // both kill every g·v − v and split the same way
        for g in &gens {
            for v in 0..dim {
                let mut r = g.images[v].clone();
                r.add_at(ring, v, &ring.from_int(-1));
                prop_assert!(fast.project(&r).is_zero());
                prop_assert!(slow.project(&r).is_zero());
            }
        }
        // the free parts are identified by section and projection in both directions
        for k in 0..fast.rank {
            let e = SparseVec::unit(k);
            prop_assert_eq!(fast.project(&fast.lift(&e)), e.clone());
            prop_assert_eq!(fast.project(&slow.lift(&slow.project(&fast.lift(&e)))), e.clone());
            prop_assert_eq!(slow.project(&fast.lift(&fast.project(&slow.lift(&e)))), e);
        }
    }
}
