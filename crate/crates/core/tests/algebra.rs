use std::sync::Arc;

use operad_forge::algebra::{
    exterior_power, extend_from_generators, free_algebra, jacobiator, symmetric_algebra, GradedAlgebra,
    LieAlgebraData,
};
use operad_forge::linalg::{BasedModule, GroundRing, LinearMap, SparseVec};
use operad_forge::operad::{build_standard, OperadKind};

fn module(ring: GroundRing, r: usize) -> BasedModule {
    BasedModule { ring, labels: (0..r).map(|k| format!("v{k}")).collect() }
}

fn dual_numbers(ring: GroundRing, square: Option<i64>) -> GradedAlgebra {
    let op = Arc::new(build_standard(OperadKind::Ass, true, ring, 4).unwrap());
    // basis 1, x
    let mut product = vec![SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(1), SparseVec::new()];
    if let Some(c) = square {
        product[3] = SparseVec::from_ints(ring, &[(0, c)]);
    }
    GradedAlgebra::from_product(op, vec![vec!["1".into()], vec!["x".into()]], product, Some(0), true).unwrap()
}

#[test]
fn free_algebra_ranks() {
    let q = GroundRing::Rationals;
    let ass = Arc::new(build_standard(OperadKind::Ass, true, q, 5).unwrap());
    assert_eq!(free_algebra(ass, &module(q, 2), 3).unwrap().algebra.ranks(), vec![1, 2, 4, 8]);
    let com = Arc::new(build_standard(OperadKind::Com, true, q, 5).unwrap());
    assert_eq!(free_algebra(com, &module(q, 2), 3).unwrap().algebra.ranks(), vec![1, 2, 3, 4]);
    let lie = Arc::new(build_standard(OperadKind::Lie, false, q, 5).unwrap());
    assert_eq!(free_algebra(lie, &module(q, 2), 3).unwrap().algebra.ranks(), vec![0, 2, 1, 2]);
}

#[test]
fn free_lie_ranks_follow_necklace_counts() {
    // (1/n) Σ_{d|n} μ(d) r^{n/d}
    fn witt(r: i64, n: i64) -> i64 {
        fn mobius(mut d: i64) -> i64 {
            let mut m = 1;
            let mut p = 2;
            while p * p <= d {
                if d % p == 0 {
                    d /= p;
                    if d % p == 0 {
                        return 0;
                    }
                    m = -m;
                }
                p += 1;
            }
            if d > 1 {
                m = -m;
            }
            m
        }
        (1..=n).filter(|d| n % d == 0).map(|d| mobius(d) * r.pow((n / d) as u32)).sum::<i64>() / n
    }
    let q = GroundRing::Rationals;
    let lie = Arc::new(build_standard(OperadKind::Lie, false, q, 5).unwrap());
    for r in 1..=3usize {
        let d = if r == 3 { 4 } else { 5 };
        let free = free_algebra(lie.clone(), &module(q, r), d).unwrap();
        for n in 1..=d {
            assert_eq!(free.algebra.component_rank(n) as i64, witt(r as i64, n as i64), "rank {r} degree {n}");
        }
    }
}

#[test]
fn free_algebras_satisfy_axioms() {
    let q = GroundRing::Rationals;
    let lie = Arc::new(build_standard(OperadKind::Lie, false, q, 4).unwrap());
    let free = free_algebra(lie, &module(q, 2), 4).unwrap();
    let rep = free.algebra.check(4);
    assert!(rep.passed(), "{rep}");
    let ass = Arc::new(build_standard(OperadKind::Ass, true, q, 4).unwrap());
    let free = free_algebra(ass, &module(q, 2), 3).unwrap();
    let rep = free.algebra.check(3);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn truncation_beyond_operad_is_rejected() {
    let q = GroundRing::Rationals;
    let ass = Arc::new(build_standard(OperadKind::Ass, true, q, 3).unwrap());
    assert_eq!(free_algebra(ass, &module(q, 2), 4).unwrap_err().code(), "E_TRUNC");
}

#[test]
fn symmetric_algebra_ranks() {
    let q = GroundRing::Rationals;
    assert_eq!(symmetric_algebra(&module(q, 3), 4).unwrap().algebra.ranks(), vec![1, 3, 6, 10, 15]);
    assert_eq!(symmetric_algebra(&module(q, 1), 3).unwrap().algebra.ranks(), vec![1, 1, 1, 1]);
    let z = GroundRing::Integers;
    let s = symmetric_algebra(&module(z, 2), 3).unwrap();
    assert_eq!(s.algebra.ranks(), vec![1, 2, 3, 4]);
    assert!(s.torsion().iter().all(Vec::is_empty));
}

#[test]
fn symmetric_algebra_passes_check() {
    let s = symmetric_algebra(&module(GroundRing::Rationals, 2), 4).unwrap();
    let rep = s.algebra.check(4);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn dual_numbers_pass_and_broken_square_fails() {
    let q = GroundRing::Rationals;
    assert!(dual_numbers(q, None).check(2).passed());
    let broken = dual_numbers(q, Some(1)).check(2);
    assert!(!broken.degree.passed());
    assert!(broken.degree.witness.is_some());
}

#[test]
fn exterior_powers() {
    let q = GroundRing::Rationals;
    assert_eq!(exterior_power(&module(q, 3), 2).module.rank(), 3);
    assert_eq!(exterior_power(&module(q, 3), 4).module.rank(), 0);
    let l2 = exterior_power(&module(q, 2), 2);
    assert_eq!(l2.module.rank(), 1);
    // e0⊗e1 has index 1, e1⊗e0 index 2
    assert_eq!(l2.inclusion.images[0], SparseVec::from_ints(q, &[(1, 1), (2, -1)]));
}

#[test]
fn exterior_inclusion_is_saturated_over_integers() {
    let z = GroundRing::Integers;
    for r in 1..=4 {
        for i in 1..=r {
            let ext = exterior_power(&module(z, r), i);
            let m = ext.inclusion.to_matrix();
            assert_eq!(m.rank(), ext.module.rank());
            let snf = m.smith_normal_form().unwrap();
            assert!(snf.torsion().is_empty(), "rank {r}, power {i}");
        }
    }
}

#[test]
fn jacobi_tags_and_jacobiator_values() {
    let q = GroundRing::Rationals;
    assert!(LieAlgebraData::sl2(q).is_jacobi());
    assert!(LieAlgebraData::heisenberg(q).is_jacobi());
    assert!(LieAlgebraData::abelian(q, 3).is_jacobi());
    let bad = LieAlgebraData::cyclic_nonjacobi(q);
    assert!(!bad.is_jacobi());
    let j = jacobiator(&bad);
    assert_eq!(j.images[0], SparseVec::from_ints(q, &[(0, -1), (1, -1), (2, -1)]));
    assert!(!LieAlgebraData::skew_nonjacobi(q).is_jacobi());
    assert!(jacobiator(&LieAlgebraData::abelian(q, 3)).is_zero());
}

#[test]
fn antisymmetry_is_enforced() {
    let q = GroundRing::Rationals;
    let m = module(q, 2);
    let e = LieAlgebraData::from_brackets("bad", m.clone(), &[(0, 0, SparseVec::unit(0))]).unwrap_err();
    assert_eq!(e.code(), "E_ANTISYM");
    let e = LieAlgebraData::from_brackets(
        "bad",
        m,
        &[(0, 1, SparseVec::unit(0)), (1, 0, SparseVec::unit(0))],
    )
    .unwrap_err();
    assert_eq!(e.code(), "E_ANTISYM");
}

#[test]
fn lie_algebras_as_operad_algebras() {
    let q = GroundRing::Rationals;
    assert!(LieAlgebraData::sl2(q).to_algebra().unwrap().check(0).passed());
    assert!(!LieAlgebraData::cyclic_nonjacobi(q).to_algebra().unwrap().check(0).passed());
}

#[test]
fn extension_from_generators() {
    let q = GroundRing::Rationals;
    let lie = Arc::new(build_standard(OperadKind::Lie, false, q, 3).unwrap());
    let free = free_algebra(lie, &module(q, 3), 2).unwrap();
    let sl2 = Arc::new(LieAlgebraData::sl2(q).to_algebra().unwrap());
    let f = LinearMap::identity(q, 3);
    let hom = extend_from_generators(&free, sl2.clone(), &f, 0).unwrap();
    assert!(hom.check(2).passed());
    let bracket01 = free.algebra.labels().iter().position(|l| l == "[v0,v1]").unwrap();
    assert_eq!(hom.map.images[bracket01], SparseVec::unit(2));
    assert_eq!(free.restrict_to_generators(&hom), f);

    // f = 0 kills every positive degree
    let zero = extend_from_generators(&free, sl2, &LinearMap::zero(q, 3, 3), 0).unwrap();
    assert!(zero.map.is_zero());
}

#[test]
fn extension_of_inclusion_is_identity() {
    let q = GroundRing::Rationals;
    let ass = Arc::new(build_standard(OperadKind::Ass, true, q, 4).unwrap());
    let free = free_algebra(ass, &module(q, 2), 3).unwrap();
    let incl = LinearMap::from_images(
        q,
        free.algebra.dim(),
        (0..2).map(|a| SparseVec::unit(free.generator(a))).collect(),
    );
    let hom = extend_from_generators(&free, free.algebra.clone(), &incl, 1).unwrap();
    assert_eq!(hom.map, LinearMap::identity(q, free.algebra.dim()));
}

#[test]
fn inhomogeneous_generator_map_is_rejected() {
    let q = GroundRing::Rationals;
    let s = symmetric_algebra(&module(q, 1), 2).unwrap();
    let f = LinearMap::from_images(q, 3, vec![SparseVec::from_ints(q, &[(0, 1), (1, 1)])]);
    assert_eq!(extend_from_generators(&s, s.algebra.clone(), &f, 1).unwrap_err().code(), "E_DEGREE");
}
