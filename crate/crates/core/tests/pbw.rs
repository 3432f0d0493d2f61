use operad_forge::algebra::{increasing_tuples, jacobiator, LieAlgebraData};
use operad_forge::linalg::{BasedModule, ExactMatrix, GroundRing, SparseVec};
use operad_forge::pbw::{enveloping_by_rewriting, pbw_verify, pbw_via_deformation, RewritingSystem};
use proptest::prelude::*;

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

#[test]
fn abelian_envelope_is_polynomial() {
    let q = GroundRing::Rationals;
    let env = enveloping_by_rewriting(&LieAlgebraData::abelian(q, 2), 4).unwrap();
    assert_eq!(env.algebra.filtration_ranks(), vec![1, 3, 6, 10, 15]);
    assert!(env.ambiguities.is_empty());
}

#[test]
fn sl2_envelope_in_filtration_two() {
    let q = GroundRing::Rationals;
    let env = enveloping_by_rewriting(&LieAlgebraData::sl2(q), 2).unwrap();
    assert_eq!(env.algebra.filtration_ranks()[2], 10);
    assert!(env.algebra.check_associative().passed());
    assert!(env.algebra.check_unit().passed());
    assert!(env.algebra.check_filtered().passed());
}

#[test]
fn nonjacobi_overlap_leaves_the_jacobiator() {
    let q = GroundRing::Rationals;
    let g = LieAlgebraData::cyclic_nonjacobi(q);
    let env = enveloping_by_rewriting(&g, 3).unwrap();
    assert_eq!(env.ambiguities.len(), 1);
    let amb = &env.ambiguities[0];
    assert_eq!(amb.triple, [2, 1, 0]);
    assert_eq!(amb.residual, SparseVec::from_ints(q, &[(0, -1), (1, -1), (2, -1)]));
}

#[test]
fn residuals_equal_the_jacobiator() {
    for ring in [GroundRing::Rationals, GroundRing::Integers, GroundRing::prime_field(5).unwrap()] {
        for g in [
            LieAlgebraData::sl2(ring),
            LieAlgebraData::heisenberg(ring),
            LieAlgebraData::cyclic_nonjacobi(ring),
            LieAlgebraData::skew_nonjacobi(ring),
            LieAlgebraData::abelian(ring, 3),
        ] {
            let sys = RewritingSystem::new(&g, 3);
            let j = jacobiator(&g);
            let amb = sys.ambiguities().unwrap();
            assert_eq!(amb.len(), increasing_tuples(g.rank(), 3).len());
            for (a, expected) in amb.iter().zip(&j.images) {
                assert_eq!(&a.residual, expected, "{} over {ring}", g.name);
            }
            assert_eq!(sys.is_confluent().unwrap(), g.is_jacobi());
        }
    }
}

/// The extension of a representation `ρ: g → End(V)` to `U(g)` read off
/// from monomials; multiplication in `U(g)` must match matrix products.
fn check_against_representation(g: &LieAlgebraData, rho: &[ExactMatrix], max_degree: usize) {
    let ring = g.ring();
    let env = enveloping_by_rewriting(g, max_degree).unwrap();
    let dim_v = rho[0].rows();
    let u = &env.algebra;
    let of_monomial: Vec<ExactMatrix> = env
        .monomials
        .monomials
        .iter()
        .map(|m| m.iter().fold(ExactMatrix::identity(ring, dim_v), |acc, &x| acc.mul(&rho[x]).unwrap()))
        .collect();
    let of_vector = |v: &SparseVec| -> ExactMatrix {
        let mut rows = vec![SparseVec::new(); dim_v];
        for (k, c) in v.iter() {
            for (r, row) in rows.iter_mut().enumerate() {
                row.add_scaled(ring, c, of_monomial[k].row(r));
            }
        }
        ExactMatrix::new(ring, dim_v, dim_v, rows)
    };
    // ρ respects the bracket
    for a in 0..g.rank() {
        for b in 0..g.rank() {
            let comm = rho[a].mul(&rho[b]).unwrap().row_vecs().iter().zip(rho[b].mul(&rho[a]).unwrap().row_vecs()).map(|(x, y)| x.sub(ring, y)).collect();
            let comm = ExactMatrix::new(ring, dim_v, dim_v, comm);
            let br = g.bracket_basis(a, b).map_indices(ring, |k| Some(env.monomials.generator(k)));
            assert_eq!(comm, of_vector(&br), "ρ is not a representation");
        }
    }
    for i in 0..u.dim() {
        for j in 0..u.dim() {
            if u.filtration_degree(i) + u.filtration_degree(j) <= max_degree {
                let lhs = of_vector(u.mul_basis(i, j));
                let rhs = of_monomial[i].mul(&of_monomial[j]).unwrap();
                assert_eq!(lhs, rhs, "{} * {}", u.labels()[i], u.labels()[j]);
            }
        }
    }
}

#[test]
fn sl2_multiplication_matches_its_representations() {
    let q = GroundRing::Rationals;
    let g = LieAlgebraData::sl2(q);
    // defining representation
    let e = ExactMatrix::from_ints(q, &[vec![0, 1], vec![0, 0]]);
    let f = ExactMatrix::from_ints(q, &[vec![0, 0], vec![1, 0]]);
    let h = ExactMatrix::from_ints(q, &[vec![1, 0], vec![0, -1]]);
    check_against_representation(&g, &[e, f, h], 4);
    // adjoint representation, columns are images
    let ad: Vec<ExactMatrix> = (0..3)
        .map(|a| {
            let cols: Vec<SparseVec> = (0..3).map(|b| g.bracket_basis(a, b).clone()).collect();
            ExactMatrix::from_columns(q, 3, &cols)
        })
        .collect();
    check_against_representation(&g, &ad, 4);
}

#[test]
fn heisenberg_multiplication_matches_a_representation() {
    // x ↦ E12, y ↦ E23, z ↦ E13 in upper triangular 3x3 matrices
    let z = GroundRing::Integers;
    let g = LieAlgebraData::heisenberg(z);
    let m = |i: usize, j: usize| {
        let mut d = vec![vec![0; 3]; 3];
        d[i][j] = 1;
        ExactMatrix::from_ints(z, &d)
    };
    check_against_representation(&g, &[m(0, 1), m(1, 2), m(0, 2)], 4);
}

#[test]
fn pbw_for_sl2_over_rationals() {
    let q = GroundRing::Rationals;
    let report = pbw_verify(&LieAlgebraData::sl2(q), 6).unwrap();
    assert!(report.passed(), "{report}");
    for d in &report.degrees {
        assert_eq!(d.gr_rank as u64, binomial(d.degree as u64 + 2, 2));
        assert!(d.is_iso && d.surjective);
    }
}

#[test]
fn pbw_for_heisenberg_over_integers() {
    let report = pbw_verify(&LieAlgebraData::heisenberg(GroundRing::Integers), 6).unwrap();
    assert!(report.passed(), "{report}");
    assert!(report.degrees.iter().all(|d| d.torsion.is_empty() && d.gr_rank as u64 == binomial(d.degree as u64 + 2, 2)));
}

#[test]
fn pbw_for_solvable_over_f5() {
    let report = pbw_verify(&LieAlgebraData::solvable2(GroundRing::prime_field(5).unwrap()), 6).unwrap();
    assert!(report.passed(), "{report}");
    let ranks: Vec<usize> = report.degrees.iter().map(|d| d.gr_rank).collect();
    assert_eq!(ranks, (1..=7).collect::<Vec<_>>());
}

#[test]
fn jacobi_failure_is_an_error() {
    let g = LieAlgebraData::skew_nonjacobi(GroundRing::Rationals);
    assert_eq!(pbw_verify(&g, 3).unwrap_err().code(), "E_JACOBI");
    assert_eq!(pbw_via_deformation(&g, 3).unwrap_err().code(), "E_JACOBI");
}

#[test]
fn deformation_route_for_abelian_is_the_identity() {
    let g = LieAlgebraData::abelian(GroundRing::Rationals, 2);
    let r = pbw_via_deformation(&g, 4).unwrap();
    assert!(r.passed(), "{r}");
    for (b, v) in r.phi.images.iter().enumerate() {
        assert_eq!(*v, SparseVec::unit(b));
    }
}

#[test]
fn deformation_route_for_sl2() {
    let g = LieAlgebraData::sl2(GroundRing::Rationals);
    let r = pbw_via_deformation(&g, 4).unwrap();
    assert!(r.passed(), "{r}");
    assert!(r.levels.iter().all(|l| l.prolongation_rank == 0 && l.automorphism_rank == 0));
    assert_eq!(r.specialization.a_one.filtration_ranks(), vec![1, 4, 10, 20, 35]);
}

#[test]
fn deformation_route_for_heisenberg_over_integers() {
    let g = LieAlgebraData::heisenberg(GroundRing::Integers);
    let r = pbw_via_deformation(&g, 4).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.composition.len(), 5);
}

fn arbitrary_lie_bracket() -> impl Strategy<Value = LieAlgebraData> {
    // structure constants of a random rank-2 algebra are always Jacobi
    (-3i64..=3, -3i64..=3).prop_map(|(a, b)| {
        let q = GroundRing::Rationals;
        let module = BasedModule { ring: q, labels: vec!["u".into(), "v".into()] };
        LieAlgebraData::from_brackets("random", module, &[(0, 1, SparseVec::from_ints(q, &[(0, a), (1, b)]))]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn rank_two_envelopes_satisfy_pbw(g in arbitrary_lie_bracket()) {
        let report = pbw_verify(&g, 4).unwrap();
        prop_assert!(report.passed());
        let ranks: Vec<usize> = report.degrees.iter().map(|d| d.gr_rank).collect();
        prop_assert_eq!(ranks, vec![1, 2, 3, 4, 5]);
    }
}
