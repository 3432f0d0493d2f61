use std::sync::Arc;

use num_bigint::BigInt;
use operad_forge::algebra::{symmetric_algebra, tuples_with_degree_at_most, GradedAlgebra, LieAlgebraData};
use operad_forge::amodule::{derivations, AModule};
use operad_forge::homology::{
    ext_bimodule, ext_table, hochschild_cochain_complex, koszul_cochain_complex, koszul_complex, paper_h,
    quillen_consistency, symmetric_generator_count, ChainComplex, Direction, ExtRoute,
};
use operad_forge::linalg::{BasedModule, GroundRing, LinearMap, SparseVec};
use operad_forge::operad::{build_standard, OperadKind};

fn module(ring: GroundRing, r: usize) -> BasedModule {
    BasedModule { ring, labels: (0..r).map(|k| format!("x{k}")).collect() }
}

fn sym(ring: GroundRing, r: usize, d: usize) -> Arc<GradedAlgebra> {
    symmetric_algebra(&module(ring, r), d).unwrap().algebra
}

/// `A_+ / A_{>top}`
fn plus(a: &Arc<GradedAlgebra>, top: i64) -> AModule {
    AModule::augmentation_ideal(a.clone()).unwrap().truncate_above(top).unwrap()
}

fn dual_numbers(ring: GroundRing) -> Arc<GradedAlgebra> {
    let op = Arc::new(build_standard(OperadKind::Ass, true, ring, 3).unwrap());
    let product = vec![SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(1), SparseVec::new()];
    let comps = vec![vec!["1".into()], vec!["x".into()], vec![]];
    Arc::new(GradedAlgebra::from_product(op, comps, product, Some(0), true).unwrap())
}

fn basis(ring: GroundRing, n: usize) -> BasedModule {
    BasedModule { ring, labels: (0..n).map(|k| format!("b{k}")).collect() }
}

#[test]
fn zero_complex_has_zero_homology() {
    let q = GroundRing::Rationals;
    let c = ChainComplex::new(q, Direction::Chain, 0, vec![basis(q, 0)], None, vec![LinearMap::zero(q, 0, 0)]).unwrap();
    assert!(c.homology(0, None).is_zero());
    assert!(c.homology(5, None).is_zero());
}

#[test]
fn multiplication_by_two_over_integers() {
    let z = GroundRing::Integers;
    let two = LinearMap::from_images(z, 1, vec![SparseVec::from_ints(z, &[(0, 2)])]);
    let c = ChainComplex::new(z, Direction::Chain, 0, vec![basis(z, 1), basis(z, 1)], None, vec![LinearMap::zero(z, 1, 0), two])
        .unwrap();
    let h0 = c.homology(0, None);
    assert_eq!(h0.rank, 0);
    assert_eq!(h0.torsion, vec![BigInt::from(2)]);
    assert!(c.homology(1, None).is_zero());
}

#[test]
fn nonzero_square_is_rejected() {
    let q = GroundRing::Rationals;
    let id = LinearMap::identity(q, 1);
    let e = ChainComplex::new(q, Direction::Chain, 0, vec![basis(q, 1); 3], None, vec![LinearMap::zero(q, 1, 0), id.clone(), id])
        .unwrap_err();
    assert_eq!(e.code(), "E_SETUP");
}

#[test]
fn koszul_complex_of_a_line() {
    let q = GroundRing::Rationals;
    let k = koszul_complex(&module(q, 1), 4).unwrap();
    let deg = k.complex.internal_degrees(1).unwrap();
    assert_eq!(deg.iter().filter(|&&d| d == 2).count(), 2);
    for d in 0..=4 {
        assert!(k.complex.homology(1, Some(d)).is_zero());
        // H_0 = S(g)
        let h0 = k.complex.homology(0, Some(d));
        assert_eq!((h0.rank, h0.torsion.len()), (1, 0));
    }
}

#[test]
fn koszul_complex_is_exact_in_small_cases() {
    for ring in [GroundRing::Rationals, GroundRing::Integers, GroundRing::prime_field(5).unwrap()] {
        for r in 1..=2 {
            let k = koszul_complex(&module(ring, r), 5).unwrap();
            for n in k.augmented.positions() {
                for d in 0..=5 {
                    let h = k.augmented.homology(n, Some(d));
                    assert!(h.is_zero(), "{ring} rank {r} position {n} degree {d}: {h:?}");
                }
            }
        }
    }
}

#[test]
fn koszul_complex_of_rank_three_squares_to_zero() {
    // construction verifies d ∘ d = 0
    let k = koszul_complex(&module(GroundRing::Integers, 3), 5).unwrap();
    assert_eq!(k.complex.positions(), 0..=3);
}

#[test]
fn hochschild_cohomology_of_the_ground_field_vanishes() {
    let q = GroundRing::Rationals;
    let op = Arc::new(build_standard(OperadKind::Ass, true, q, 3).unwrap());
    let a = Arc::new(GradedAlgebra::from_product(op, vec![vec!["1".into()]], vec![SparseVec::unit(0)], Some(0), true).unwrap());
    let m = AModule::regular(a.clone()).unwrap();
    let c = hochschild_cochain_complex(&a, &m, 0..=4, None).unwrap().complex;
    assert_eq!(c.homology(0, None).rank, 1);
    for n in 1..=3 {
        assert!(c.homology(n, None).is_zero());
    }
}

/// `A → A → A → …` with maps alternating between `a ↦ xa − ax` and
/// `a ↦ xa + ax`, from the 2-periodic resolution of `k[x]/x²`.
fn periodic_oracle(a: &GradedAlgebra, len: usize) -> ChainComplex {
    let ring = a.ring();
    let x = SparseVec::unit(1);
    let map = |sign: i64| {
        let images = (0..2)
            .map(|k| {
                let e = SparseVec::unit(k);
                let mut v = a.mul(&x, &e);
                v.add_scaled(ring, &ring.from_int(sign), &a.mul(&e, &x));
                v
            })
            .collect();
        LinearMap::from_images(ring, 2, images)
    };
    let mut out: Vec<LinearMap> = (0..len).map(|n| if n % 2 == 0 { map(-1) } else { map(1) }).collect();
    out.push(LinearMap::zero(ring, 2, 0));
    ChainComplex::new(ring, Direction::Cochain, 0, vec![basis(ring, 2); len + 1], None, out).unwrap()
}

#[test]
fn hochschild_cohomology_of_dual_numbers_matches_periodic_resolution() {
    for ring in [GroundRing::Rationals, GroundRing::prime_field(2).unwrap(), GroundRing::Integers] {
        let a = dual_numbers(ring);
        let m = AModule::regular(a.clone()).unwrap();
        let c = hochschild_cochain_complex(&a, &m, 0..=5, None).unwrap().complex;
        let oracle = periodic_oracle(&a, 5);
        for n in 0..=4 {
            let (h, o) = (c.homology(n, None), oracle.homology(n, None));
            assert_eq!((h.rank, &h.torsion), (o.rank, &o.torsion), "{ring} HH^{n}");
        }
        if ring == GroundRing::Rationals {
            let ranks: Vec<usize> = (0..=4).map(|n| c.homology(n, None).rank).collect();
            assert_eq!(ranks, vec![2, 1, 1, 1, 1]);
        }
    }
}

/// Unnormalized cochains `Hom(A^{⊗n}, M)`, all internal degrees, built
/// directly from the multiplication table.
fn unnormalized(a: &GradedAlgebra, m: &AModule, top: usize) -> ChainComplex {
    let ring = a.ring();
    let n_a = a.dim();
    let tuples = |n: usize| tuples_with_degree_at_most(&vec![0; n_a], n, 0);
    let dims: Vec<usize> = (0..=top).map(|n| tuples(n).len() * m.dim()).collect();
    let pos = |t: &[usize], w: usize| -> usize { t.iter().fold(0, |acc, &x| acc * n_a + x) * m.dim() + w };
    let mut out = Vec::new();
    for n in 0..=top {
        if n == top {
            out.push(LinearMap::zero(ring, dims[n], 0));
            break;
        }
        // evaluate δf on every (n+1)-tuple for f = e_{(t, w)}
        let mut images = vec![SparseVec::new(); dims[n]];
        for s in tuples(n + 1) {
            for w in 0..m.dim() {
                // a_1 f(a_2, …)
                for (z, c) in m.act_left(0, s[0], w).iter() {
                    images[pos(&s[1..], w)].add_at(ring, pos(&s, z), c);
                }
                // (−1)^{n+1} f(a_1, …, a_n) a_{n+1}
                for (z, c) in m.act_right(0, s[n], w).iter() {
                    let c = if (n + 1) % 2 == 0 { c.clone() } else { ring.neg(c) };
                    images[pos(&s[..n], w)].add_at(ring, pos(&s, z), &c);
                }
                for i in 0..n {
                    for (y, c) in a.mul_basis(0, s[i], s[i + 1]).iter() {
                        let mut t = s[..i].to_vec();
                        t.push(y);
                        t.extend_from_slice(&s[i + 2..]);
                        let c = if (i + 1) % 2 == 0 { c.clone() } else { ring.neg(c) };
                        images[pos(&t, w)].add_at(ring, pos(&s, w), &c);
                    }
                }
            }
        }
        out.push(LinearMap::from_images(ring, dims[n + 1], images));
    }
    ChainComplex::new(ring, Direction::Cochain, 0, dims.iter().map(|&d| basis(ring, d)).collect(), None, out).unwrap()
}

#[test]
fn normalized_and_unnormalized_cochains_agree() {
    let q = GroundRing::Rationals;
    let a = dual_numbers(q);
    let m = AModule::regular(a.clone()).unwrap();
    let normalized = hochschild_cochain_complex(&a, &m, 0..=4, None).unwrap().complex;
    let full = unnormalized(&a, &m, 4);
    for n in 0..=3 {
        assert_eq!(normalized.homology(n, None).rank, full.homology(n, None).rank, "HH^{n}");
    }
}

#[test]
fn symmetric_algebras_are_recognized() {
    let q = GroundRing::Rationals;
    assert_eq!(symmetric_generator_count(&sym(q, 2, 3)), Some(2));
    assert_eq!(symmetric_generator_count(&dual_numbers(q)), None);
}

#[test]
fn ext_two_of_polynomials_in_two_variables() {
    let q = GroundRing::Rationals;
    let a = sym(q, 2, 3);
    let m = plus(&a, 2);
    let k = ext_bimodule(&a, &m, 2, -1, Some(ExtRoute::Koszul)).unwrap();
    let c = ext_bimodule(&a, &m, 2, -1, Some(ExtRoute::Cochain)).unwrap();
    assert_eq!((k.rank(), c.rank()), (2, 2));
    // Hom(Λ²g, g): every Koszul cochain is a cocycle and none is a coboundary
    let kc = koszul_cochain_complex(&a, &m, -1).unwrap();
    assert_eq!(kc.term(2).unwrap().rank(), 2);
    assert!(k.group.boundaries.is_empty());
    let report = quillen_consistency(&a, &m, 2, -1).unwrap();
    assert!(report.agree(), "{:?}", report.comparison);
}

#[test]
fn ext_of_a_line_vanishes_beyond_one() {
    let q = GroundRing::Rationals;
    for j in 0..=3i64 {
        let a = sym(q, 1, (3 + j) as usize);
        let m = AModule::regular(a.clone()).unwrap().truncate_above(3 - j).unwrap();
        let r = quillen_consistency(&a, &m, 2, -j).unwrap();
        assert_eq!((r.koszul.rank(), r.cochain.rank()), (0, 0), "degree {}", -j);
        assert!(r.agree());
    }
}

#[test]
fn quillen_consistency_in_rank_three() {
    let q = GroundRing::Rationals;
    let a = sym(q, 3, 4);
    let m = plus(&a, 2);
    let r = quillen_consistency(&a, &m, 3, -2).unwrap();
    assert_eq!((r.koszul.rank(), r.cochain.rank()), (3, 3));
    assert!(r.agree(), "{:?}", r.comparison);
}

#[test]
fn cohomology_indices_shift_by_one() {
    let q = GroundRing::Rationals;
    let a = sym(q, 2, 4);
    let m = AModule::augmentation_ideal(a.clone()).unwrap();
    let h1 = paper_h(&a, &m, 1, -1).unwrap();
    assert_eq!((h1.ext_index, h1.rank), (Some(2), 2));
    assert_eq!(paper_h(&a, &m, 2, -2).unwrap().rank, 0);
    let a3 = sym(q, 3, 4);
    let m3 = AModule::augmentation_ideal(a3.clone()).unwrap();
    assert_eq!(paper_h(&a3, &m3, 2, -2).unwrap().rank, 3);
    // H^0 = derivations
    let reg = AModule::regular(a.clone()).unwrap();
    for j in -1..=1 {
        assert_eq!(paper_h(&a, &reg, 0, j).unwrap().rank, derivations(&reg, j).len());
    }
}

#[test]
fn ext_table_is_sorted_and_routes_are_scoped() {
    let q = GroundRing::Rationals;
    let a = sym(q, 2, 3);
    let m = plus(&a, 3);
    let table = ext_table(&a, &m, &[(2, -1), (1, 0), (2, -2)], None).unwrap();
    let cells: Vec<(usize, i64)> = table.entries.iter().map(|e| (e.i, e.degree)).collect();
    assert_eq!(cells, vec![(1, 0), (2, -2), (2, -1)]);
    assert_eq!(table.get(2, -1).unwrap().rank(), 2);

    let d = dual_numbers(q);
    let dm = AModule::regular(d.clone()).unwrap();
    assert_eq!(ext_bimodule(&d, &dm, 1, 0, Some(ExtRoute::Koszul)).unwrap_err().code(), "E_SCOPE");
    let g = Arc::new(LieAlgebraData::sl2(q).to_algebra().unwrap());
    let gm = AModule::regular(g.clone()).unwrap();
    assert_eq!(ext_bimodule(&g, &gm, 1, 0, None).unwrap_err().code(), "E_SCOPE");
    assert_eq!(hochschild_cochain_complex(&g, &gm, 0..=2, None).unwrap_err().code(), "E_OPERAD");
}

#[test]
fn cochain_route_needs_enough_algebra_degrees() {
    let q = GroundRing::Rationals;
    let a = sym(q, 2, 2);
    let m = AModule::augmentation_ideal(a.clone()).unwrap();
    assert_eq!(ext_bimodule(&a, &m, 2, -1, Some(ExtRoute::Cochain)).unwrap_err().code(), "E_TRUNC");
}
