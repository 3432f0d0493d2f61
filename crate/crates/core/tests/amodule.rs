use std::sync::Arc;

use operad_forge::algebra::{free_algebra, symmetric_algebra, AlgebraHom, GradedAlgebra, LieAlgebraData};
use operad_forge::amodule::{
    check_derivation, derivations, derivations_in_window, enveloping, free_module, ideal_ia, representability_check,
    square_zero_extension, AModule, EnvelopingAlgebra, ModelData,
};
use operad_forge::linalg::{rank_of_rows, BasedModule, GroundRing, LinearMap, SparseVec};
use operad_forge::operad::{build_standard, OperadKind};

fn module(ring: GroundRing, r: usize) -> BasedModule {
    BasedModule { ring, labels: (0..r).map(|k| format!("v{k}")).collect() }
}

fn ass(ring: GroundRing, arity: usize) -> Arc<operad_forge::operad::FinOperad> {
    Arc::new(build_standard(OperadKind::Ass, true, ring, arity).unwrap())
}

/// `ℚ[x]/x²` with `x` in degree 1 and an empty degree-2 component, so that
/// `x² = 0` is part of the data.
fn dual_numbers(ring: GroundRing) -> Arc<GradedAlgebra> {
    let product = vec![SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(1), SparseVec::new()];
    let comps = vec![vec!["1".into()], vec!["x".into()], vec![]];
    Arc::new(GradedAlgebra::from_product(ass(ring, 5), comps, product, Some(0), true).unwrap())
}

/// Upper triangular 2×2 matrices: `1`, `e = E11` in degree 0, `n = E12` in
/// degree 1.
fn triangular(ring: GroundRing) -> Arc<GradedAlgebra> {
    let e = SparseVec::unit;
    let z = SparseVec::new;
    #[rustfmt::skip]
    let product = vec![
        e(0), e(1), e(2),
        e(1), e(1), e(2),
        e(2), z(), z(),
    ];
    let comps = vec![vec!["1".into(), "e".into()], vec!["n".into()], vec![]];
    Arc::new(GradedAlgebra::from_product(ass(ring, 5), comps, product, Some(0), false).unwrap())
}

fn adjoint(data: &LieAlgebraData, flip: Option<(usize, usize)>) -> AModule {
    let ring = data.ring();
    let r = data.rank();
    let rho: Vec<LinearMap> = (0..r)
        .map(|a| {
            let images = (0..r)
                .map(|m| {
                    let v = data.bracket_basis(a, m).clone();
                    if flip == Some((a, m)) {
                        v.neg(ring)
                    } else {
                        v
                    }
                })
                .collect();
            LinearMap::from_images(ring, r, images)
        })
        .collect();
    AModule::lie_representation(data, data.labels().to_vec(), &rho).unwrap()
}

#[test]
fn adjoint_module_passes_and_flipped_sign_fails() {
    let q = GroundRing::Rationals;
    let sl2 = LieAlgebraData::sl2(q);
    let rep = adjoint(&sl2, None).check(0);
    assert!(rep.passed(), "{rep}");
    let bad = adjoint(&sl2, Some((0, 1))).check(0);
    assert!(!bad.passed());
}

#[test]
fn adjoint_module_fails_for_non_jacobi_bracket() {
    let q = GroundRing::Rationals;
    assert!(!adjoint(&LieAlgebraData::cyclic_nonjacobi(q), None).check(0).passed());
    assert!(adjoint(&LieAlgebraData::heisenberg(q), None).check(0).passed());
}

#[test]
fn dual_numbers_bimodule_passes() {
    let a = dual_numbers(GroundRing::Rationals);
    let rep = AModule::regular(a.clone()).unwrap().check(2);
    assert!(rep.passed(), "{rep}");
    let rep = AModule::augmentation_ideal(a).unwrap().check(2);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn default_model_satisfies_axioms_and_perturbation_fails() {
    let q = GroundRing::Rationals;
    for kind in [OperadKind::Ass, OperadKind::Com, OperadKind::Lie] {
        let op = Arc::new(build_standard(kind, kind != OperadKind::Lie, q, 4).unwrap());
        let model = ModelData::from_operad(op).unwrap();
        assert!(model.check_axioms().passed(), "{kind:?}");
    }
    let mut model = ModelData::from_operad(ass(q, 4)).unwrap();
    model.set_marked_composition(2, 2, 0, 1, SparseVec::unit(0));
    assert!(!model.check_axioms().passed());
    let mut model = ModelData::from_operad(ass(q, 3)).unwrap();
    model.set_unit(SparseVec::from_ints(q, &[(0, 2)]));
    assert!(!model.check_axioms().unit.passed());
}

/// Checks `a ⊗ b ↦ L(a) R(b)` is a multiplicative bijection `A ⊗ A^op → P_A`.
fn assert_matches_tensor_oracle(a: &GradedAlgebra, env: &EnvelopingAlgebra) {
    let ring = a.ring();
    let n = a.dim();
    assert_eq!(env.dim(), n * n);
    let e = SparseVec::unit;
    let phi = |x: &SparseVec, y: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in x.iter() {
            for (j, d) in y.iter() {
                let l = env.left_operator(&e(i));
                let r = env.operator(&e(0), &e(j));
                out.add_scaled(ring, &ring.mul(c, d), &env.mul(&l, &r).expect("within truncation"));
            }
        }
        out
    };
    let images: Vec<SparseVec> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| phi(&e(i), &e(j))).collect();
    assert_eq!(rank_of_rows(ring, images.clone()), n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    // (a ⊗ b)(a' ⊗ b') = aa' ⊗ b'b
                    let lhs = env.mul(&images[i * n + j], &images[k * n + l]).expect("within truncation");
                    let rhs = phi(&a.mul(&e(i), &e(k)), &a.mul(&e(l), &e(j)));
                    assert_eq!(lhs, rhs, "{} {} {} {}", a.labels()[i], a.labels()[j], a.labels()[k], a.labels()[l]);
                }
            }
        }
    }
}

#[test]
fn enveloping_of_dual_numbers_is_tensor_with_opposite() {
    let a = dual_numbers(GroundRing::Rationals);
    let env = enveloping(a.clone(), 4).unwrap();
    assert!(env.check().passed());
    assert_matches_tensor_oracle(&a, &env);
}

#[test]
fn enveloping_of_triangular_matrices_is_tensor_with_opposite() {
    let a = triangular(GroundRing::Rationals);
    assert!(a.check(2).passed());
    let env = enveloping(a.clone(), 4).unwrap();
    assert!(env.check().passed());
    assert_matches_tensor_oracle(&a, &env);
}

#[test]
fn enveloping_beyond_operad_arity_is_rejected() {
    let a = dual_numbers(GroundRing::Rationals);
    assert_eq!(enveloping(a, 5).unwrap_err().code(), "E_TRUNC");
}

#[test]
fn enveloping_of_heisenberg_has_pbw_ranks() {
    let q = GroundRing::Rationals;
    let data = LieAlgebraData::heisenberg(q);
    let g = Arc::new(data.to_algebra_with_arity(4).unwrap());
    let env = enveloping(g, 3).unwrap();
    assert_eq!(env.filtered_ranks(), vec![1, 4, 10, 20]);
    assert_eq!(env.graded_ranks(), vec![1, 3, 6, 10]);
    assert_eq!(env.word_ranks, vec![1, 3, 9, 27]);
    assert!(env.check().passed());
    // op(x) op(y) − op(y) op(x) = op([x, y])
    let e = SparseVec::unit;
    for x in 0..3 {
        for y in 0..3 {
            let (lx, ly) = (env.left_operator(&e(x)), env.left_operator(&e(y)));
            let comm = env.mul(&lx, &ly).unwrap().sub(q, &env.mul(&ly, &lx).unwrap());
            assert_eq!(comm, env.left_operator(data.bracket_basis(x, y)));
        }
    }
}

#[test]
fn enveloping_of_abelian_line_over_integers_is_polynomial_ring() {
    let z = GroundRing::Integers;
    let g = Arc::new(LieAlgebraData::abelian(z, 1).to_algebra_with_arity(4).unwrap());
    let env = enveloping(g, 3).unwrap();
    assert!(env.torsion.is_empty());
    assert_eq!(env.dim(), 4);
    let t = env.left_operator(&SparseVec::unit(0));
    let mut power = SparseVec::unit(env.unit());
    let mut seen = Vec::new();
    for k in 0..=3 {
        assert_eq!(power.nnz(), 1, "t^{k}");
        let (idx, c) = power.leading().unwrap();
        assert!(z.is_unit(c));
        assert_eq!(env.levels()[idx], k);
        seen.push(idx);
        if k < 3 {
            power = env.mul(&t, &power).unwrap();
        }
    }
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), 4);
}

#[test]
fn free_module_ranks_and_adjunction() {
    let q = GroundRing::Rationals;
    let a = dual_numbers(q);
    let env = enveloping(a.clone(), 4).unwrap();
    let f1 = free_module(&env, &module(q, 1)).unwrap();
    assert_eq!(f1.dim(), env.dim());
    let f2 = free_module(&env, &module(q, 2)).unwrap();
    assert_eq!(f2.dim(), 2 * env.dim());
    for d in 0..=2 {
        assert_eq!(f2.rank_in_degree(d), 2 * f1.rank_in_degree(d));
    }
    let rep = f1.check(2);
    assert!(rep.passed(), "{rep}");
    let m = AModule::regular(a).unwrap();
    // Hom_A(F(U), M) ≅ Hom_R(U, M)
    assert_eq!(f1.homs_to(&m, None).len(), 2);
    assert_eq!(f2.homs_to(&m, None).len(), 4);
}

#[test]
fn homs_out_of_enveloping_algebra_recover_the_module() {
    let q = GroundRing::Rationals;
    let data = LieAlgebraData::sl2(q);
    let g = Arc::new(data.to_algebra().unwrap());
    let env = enveloping(g, 2).unwrap();
    let p = free_module(&env, &module(q, 1)).unwrap();
    let m = adjoint(&data, None);
    let homs = p.homs_to(&m, None);
    assert_eq!(homs.len(), m.dim());
    // evaluation at the unit is a bijection onto M
    let at_unit: Vec<SparseVec> = homs.iter().map(|f| f.images[env.unit()].clone()).collect();
    assert_eq!(rank_of_rows(q, at_unit), m.dim());
    for f in &homs {
        assert!(p.is_hom(&m, f).passed());
    }
}

#[test]
fn derivations_of_free_associative_algebra() {
    let q = GroundRing::Rationals;
    let free = free_algebra(ass(q, 4), &module(q, 2), 3).unwrap();
    let a = free.algebra.clone();
    let m = AModule::trivial(a.clone(), (0..3).map(|k| format!("m{k}")).collect(), vec![1; 3], 1).unwrap();
    assert!(m.check(3).passed());
    assert_eq!(derivations(&m, 0).len(), 6);
    assert_eq!(derivations(&m, 1).len(), 0);
    let regular = AModule::regular(a.clone()).unwrap();
    let ranks: Vec<usize> = derivations_in_window(&regular, -1..=2).into_iter().map(|(_, b)| b.len()).collect();
    // images of the two generators are free in A_{1+j}
    assert_eq!(ranks, vec![2, 4, 8, 16]);
    for d in derivations(&regular, 1) {
        assert!(check_derivation(&regular, &d, 1, 3).passed());
    }
}

#[test]
fn derivations_of_polynomials_in_one_variable() {
    let q = GroundRing::Rationals;
    let s = symmetric_algebra(&module(q, 1), 4).unwrap();
    let a = AModule::regular(s.algebra.clone()).unwrap();
    for (j, basis) in derivations_in_window(&a, -3..=3) {
        assert_eq!(basis.len(), usize::from(j >= -1), "degree {j}");
        for d in &basis {
            assert!(check_derivation(&a, d, j, 4).passed());
        }
    }
    // d/dx
    let ddx = &derivations(&a, -1)[0];
    let x2 = s.algebra.labels().iter().position(|l| l.contains('2') || l == "v0v0").unwrap();
    assert_eq!(ddx.images[x2].nnz(), 1);
}

#[test]
fn no_degree_lowering_derivations_into_augmentation_ideal() {
    let q = GroundRing::Rationals;
    for r in 1..=3 {
        let s = symmetric_algebra(&module(q, r), 3).unwrap();
        let plus = AModule::augmentation_ideal(s.algebra.clone()).unwrap();
        assert!(derivations(&plus, -1).is_empty(), "rank {r}");
        assert_eq!(derivations(&plus, 0).len(), r * r);
    }
}

#[test]
fn square_zero_extension_is_an_algebra() {
    let q = GroundRing::Rationals;
    let s = symmetric_algebra(&module(q, 1), 3).unwrap();
    let plus = AModule::augmentation_ideal(s.algebra.clone()).unwrap();
    let sz = square_zero_extension(&plus).unwrap();
    assert_eq!(sz.algebra.dim(), 4 + 3);
    assert!(sz.algebra.check(3).passed());
    assert!(sz.projection.check(3).passed());
    let shifted = plus.shift(-2);
    assert_eq!(square_zero_extension(&shifted).unwrap_err().code(), "E_DEGREE");
}

#[test]
fn representability_for_polynomials() {
    let q = GroundRing::Rationals;
    let s = symmetric_algebra(&module(q, 1), 3).unwrap();
    let id = AlgebraHom::new(s.algebra.clone(), s.algebra.clone(), LinearMap::identity(q, 4)).unwrap();
    let plus = AModule::augmentation_ideal(s.algebra.clone()).unwrap();
    let report = representability_check(&id, &plus, -1..=1).unwrap();
    for r in &report {
        assert!(r.passed(), "{r:?}");
    }
    assert_eq!(report.iter().map(|r| r.derivation_rank).collect::<Vec<_>>(), vec![0, 1, 1]);
}

#[test]
fn representability_for_free_associative_algebra() {
    let q = GroundRing::Rationals;
    let free = free_algebra(ass(q, 4), &module(q, 2), 3).unwrap();
    let a = free.algebra.clone();
    let id = AlgebraHom::new(a.clone(), a.clone(), LinearMap::identity(q, a.dim())).unwrap();
    let m = AModule::trivial(a.clone(), (0..3).map(|k| format!("m{k}")).collect(), vec![1; 3], 1).unwrap();
    let report = representability_check(&id, &m, 0..=0).unwrap();
    assert!(report[0].passed(), "{:?}", report[0]);
    assert_eq!(report[0].hom_rank, 6);
}

#[test]
fn representability_rejects_mismatched_algebras() {
    let q = GroundRing::Rationals;
    let s = symmetric_algebra(&module(q, 1), 3).unwrap();
    let id = AlgebraHom::new(s.algebra.clone(), s.algebra.clone(), LinearMap::identity(q, 4)).unwrap();
    let other = AModule::regular(dual_numbers(q)).unwrap();
    assert_eq!(representability_check(&id, &other, 0..=0).unwrap_err().code(), "E_SETUP");
}

#[test]
fn ideal_of_dual_numbers_and_of_the_ground_field() {
    let q = GroundRing::Rationals;
    let a = dual_numbers(q);
    let ia = ideal_ia(a.clone(), 0).unwrap();
    assert_eq!(ia.module.dim(), 2);
    assert!(ia.module.check(2).passed());
    let m = AModule::regular(a.clone()).unwrap();
    for j in -1..=1 {
        let r = ia.representability(&m, j).unwrap();
        assert!(r.passed(), "{r:?}");
    }
    let comps = vec![vec!["1".into()]];
    let field = Arc::new(GradedAlgebra::from_product(ass(q, 3), comps, vec![SparseVec::unit(0)], Some(0), true).unwrap());
    assert_eq!(ideal_ia(field, 0).unwrap().module.dim(), 0);
}

#[test]
fn ideal_of_polynomials_is_kaehler_differentials() {
    let q = GroundRing::Rationals;
    let s = symmetric_algebra(&module(q, 2), 3).unwrap();
    let ia = ideal_ia(s.algebra.clone(), 0).unwrap();
    assert!(ia.module.check(3).passed());
    // A_{d−1} ⊗ V in degree d
    assert_eq!((1..=3).map(|d| ia.module.rank_in_degree(d)).collect::<Vec<_>>(), vec![2, 4, 6]);
    let plus = AModule::augmentation_ideal(s.algebra.clone()).unwrap();
    for j in -1..=2 {
        let r = ia.representability(&plus, j).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn ideal_of_lie_algebra_is_augmentation_ideal() {
    let q = GroundRing::Rationals;
    let data = LieAlgebraData::heisenberg(q);
    let g = Arc::new(data.to_algebra_with_arity(4).unwrap());
    let ia = ideal_ia(g, 3).unwrap();
    assert_eq!(ia.module.dim(), 19);
    let r = ia.representability(&adjoint(&data, None), 0).unwrap();
    assert!(r.passed(), "{r:?}");
    let sl2 = LieAlgebraData::sl2(q);
    let ia = ideal_ia(Arc::new(sl2.to_algebra().unwrap()), 2).unwrap();
    let r = ia.representability(&adjoint(&sl2, None), 0).unwrap();
    assert!(r.passed(), "{r:?}");
    // every derivation of sl2 is inner
    assert_eq!(r.derivation_rank, 3);
}

#[test]
fn ideal_needs_a_standard_operad() {
    let q = GroundRing::Rationals;
    let lie = Arc::new(build_standard(OperadKind::Lie, false, q, 3).unwrap());
    let free = free_algebra(lie, &module(q, 1), 2).unwrap();
    assert!(ideal_ia(free.algebra.clone(), 2).is_ok());
    let com_nonunital = Arc::new(build_standard(OperadKind::Com, false, q, 3).unwrap());
    let free = free_algebra(com_nonunital, &module(q, 1), 2).unwrap();
    assert_eq!(ideal_ia(free.algebra.clone(), 0).unwrap_err().code(), "E_OPERAD");
}
