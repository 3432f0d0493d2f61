//! Acceptance run: one line per criterion, each with its own time limit.
//! Exits nonzero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use operad_forge::algebra::{extend_from_generators, free_algebra, jacobiator, symmetric_algebra, AlgebraHom, GradedAlgebra, LieAlgebraData};
use operad_forge::amodule::{check_derivations, derivations, derivations_in_window, enveloping, representability_check, AModule, EnvelopingAlgebra};
use operad_forge::deformation::{level_one_from_bracket, obstruction, prolong, tower_automorphisms, Prolongation};
use operad_forge::homology::{koszul_complex, paper_h, quillen_consistency};
use operad_forge::linalg::{rank_of_rows, BasedModule, GroundRing, LinearMap, SparseVec};
use operad_forge::operad::{build_standard, FinOperad, OperadKind};
use operad_forge::pbw::{enveloping_by_rewriting, pbw_verify, pbw_via_deformation};

type Outcome = Result<String, String>;

fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn rings() -> [GroundRing; 3] {
    [GroundRing::Rationals, GroundRing::prime_field(5).unwrap(), GroundRing::Integers]
}

fn module(ring: GroundRing, r: usize) -> BasedModule {
    BasedModule { ring, labels: (0..r).map(|k| format!("v{k}")).collect() }
}

fn operad(kind: OperadKind, ring: GroundRing, arity: usize) -> Arc<FinOperad> {
    Arc::new(build_standard(kind, kind != OperadKind::Lie, ring, arity).unwrap())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn mobius(n: usize) -> i64 {
    let (mut m, mut n, mut p) = (1, n, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// Necklace count of Lie words of length `n` in `r` letters.
fn witt(r: usize, n: usize) -> usize {
    let s: i64 = (1..=n).filter(|d| n % d == 0).map(|d| mobius(d) * (r as i64).pow((n / d) as u32)).sum();
    (s / n as i64) as usize
}

fn operads_satisfy_axioms() -> Outcome {
    let mut checked = 0;
    for ring in rings() {
        for kind in [OperadKind::Com, OperadKind::Ass, OperadKind::Lie] {
            let unitals: &[bool] = if kind == OperadKind::Lie { &[false] } else { &[false, true] };
            for &unital in unitals {
                let op = ok(build_standard(kind, unital, ring, 5))?;
                let report = op.check_axioms();
                need(report.passed(), || format!("{} over {ring}: {report}", op.name()))?;
                for n in 1..=5 {
                    let expect = match kind {
                        OperadKind::Com => 1,
                        OperadKind::Ass => factorial(n),
                        _ => factorial(n - 1),
                    };
                    need(op.dim(n) == expect, || format!("{} over {ring}: rank {} in arity {n}", op.name(), op.dim(n)))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} operads up to arity 5"))
}

fn generator_image_rows(free: &operad_forge::algebra::FreeAlgebra, maps: &[LinearMap], width: usize) -> Vec<SparseVec> {
    let ring = free.algebra.ring();
    maps.iter()
        .map(|d| {
            let mut v = SparseVec::new();
            for a in 0..free.generators.rank() {
                for (m, c) in d.images[free.generator(a)].iter() {
                    v.add_at(ring, a * width + m, c);
                }
            }
            v
        })
        .collect()
}

fn free_algebra_adjunction() -> Outcome {
    let q = GroundRing::Rationals;
    let d_max = 4;
    let mut homs = 0;
    let mut ders = 0;
    for kind in [OperadKind::Com, OperadKind::Ass, OperadKind::Lie] {
        for r in 1..=3 {
            let free = ok(free_algebra(operad(kind, q, d_max), &module(q, r), d_max))?;
            let a = free.algebra.clone();
            for n in 1..=d_max {
                let expect = match kind {
                    OperadKind::Com => binomial(n + r - 1, n),
                    OperadKind::Ass => r.pow(n as u32),
                    _ => witt(r, n),
                };
                need(a.component_rank(n) == expect, || format!("{kind:?} rank {r}: degree {n} has rank {}", a.component_rank(n)))?;
            }

            // Hom_alg(Free(V), Free(V)) against Hom_R(V, Free(V)_1): every
            // elementary generator map extends and restricts back
            let gens: Vec<usize> = (0..r).map(|g| free.generator(g)).collect();
            let mut maps: Vec<LinearMap> = Vec::new();
            for x in 0..r {
                for &y in &gens {
                    let images = (0..r).map(|k| if k == x { SparseVec::unit(y) } else { SparseVec::new() }).collect();
                    maps.push(LinearMap::from_images(q, a.dim(), images));
                }
            }
            let generic = (0..r).map(|k| SparseVec::from_ints(q, &gens.iter().enumerate().map(|(l, &g)| (g, (k + 2 * l + 1) as i64)).collect::<Vec<_>>())).collect();
            maps.push(LinearMap::from_images(q, a.dim(), generic));
            for f in &maps {
                let hom = ok(extend_from_generators(&free, a.clone(), f, 1))?;
                let c = hom.check(d_max);
                need(c.passed(), || format!("{kind:?} rank {r}: extension is not a homomorphism: {:?}", c.witness))?;
                need(free.restrict_to_generators(&hom) == *f, || format!("{kind:?} rank {r}: restriction does not return the generator map"))?;
                homs += 1;
            }
            let id = ok(AlgebraHom::new(a.clone(), a.clone(), LinearMap::identity(q, a.dim())))?;
            let incl = free.restrict_to_generators(&id);
            let back = ok(extend_from_generators(&free, a.clone(), &incl, 1))?;
            need(back.map == id.map, || format!("{kind:?} rank {r}: identity is not the extension of the inclusion"))?;

            // Ω(Free(V), A)_j against Hom_R(V, A_{1+j})
            let m = ok(AModule::regular(a.clone()))?;
            let lo = if kind == OperadKind::Lie { 0 } else { -1 };
            for (j, basis) in derivations_in_window(&m, lo..=(d_max as i64 - 1)) {
                let target = a.component_rank((1 + j) as usize);
                need(basis.len() == r * target, || format!("{kind:?} rank {r}: {} derivations of degree {j}, expected {}", basis.len(), r * target))?;
                let rows = generator_image_rows(&free, &basis, m.dim());
                need(rank_of_rows(q, rows) == basis.len(), || format!("{kind:?} rank {r}: restriction to V is not injective in degree {j}"))?;
                let c = check_derivations(&m, &basis, j, d_max);
                need(c.passed(), || format!("{kind:?} rank {r}: degree {j}: {:?}", c.witness))?;
                ders += basis.len();
            }
        }
    }
    Ok(format!("{homs} generator maps extended, {ders} derivations matched to Hom(V, M)"))
}

fn dual_numbers(ring: GroundRing) -> Arc<GradedAlgebra> {
    let product = vec![SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(1), SparseVec::new()];
    let comps = vec![vec!["1".into()], vec!["x".into()], vec![]];
    Arc::new(GradedAlgebra::from_product(operad(OperadKind::Ass, ring, 5), comps, product, Some(0), true).unwrap())
}

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
    Arc::new(GradedAlgebra::from_product(operad(OperadKind::Ass, ring, 5), comps, product, Some(0), false).unwrap())
}

/// `a ⊗ b ↦ L(a) R(b)` is a multiplicative bijection `A ⊗ A^op → P_A`.
fn matches_tensor_with_opposite(a: &GradedAlgebra, env: &EnvelopingAlgebra) -> Result<usize, String> {
    let ring = a.ring();
    let n = a.dim();
    need(env.dim() == n * n, || format!("P_A has rank {}, expected {}", env.dim(), n * n))?;
    let e = SparseVec::unit;
    let phi = |x: &SparseVec, y: &SparseVec| -> Result<SparseVec, String> {
        let mut out = SparseVec::new();
        for (i, c) in x.iter() {
            for (j, d) in y.iter() {
                let l = env.left_operator(&e(i));
                let r = env.operator(&e(0), &e(j));
                let lr = env.mul(&l, &r).ok_or("product beyond the truncation")?;
                out.add_scaled(ring, &ring.mul(c, d), &lr);
            }
        }
        Ok(out)
    };
    let mut images = Vec::new();
    for i in 0..n {
        for j in 0..n {
            images.push(phi(&e(i), &e(j))?);
        }
    }
    need(rank_of_rows(ring, images.clone()) == n * n, || "A ⊗ A^op → P_A is not injective".into())?;
    let mut checked = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let lhs = env.mul(&images[i * n + j], &images[k * n + l]).ok_or("product beyond the truncation")?;
                    let rhs = phi(&a.mul(&e(i), &e(k)), &a.mul(&e(l), &e(j)))?;
                    need(lhs == rhs, || format!("products differ at {} {} {} {}", a.labels()[i], a.labels()[j], a.labels()[k], a.labels()[l]))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

fn enveloping_oracles() -> Outcome {
    let mut checked = 0;
    for ring in [GroundRing::Rationals, GroundRing::Integers] {
        for a in [dual_numbers(ring), triangular(ring)] {
            let env = ok(enveloping(a.clone(), 4))?;
            need(env.check().passed(), || "P_A fails its own axioms".into())?;
            checked += matches_tensor_with_opposite(&a, &env)?;
        }
    }
    let q = GroundRing::Rationals;
    let data = LieAlgebraData::heisenberg(q);
    let g = Arc::new(ok(data.to_algebra_with_arity(4))?);
    let env = ok(enveloping(g, 3))?;
    let expect: Vec<usize> = (0..=3).map(|n| binomial(n + 3, 3)).collect();
    need(env.filtered_ranks() == expect, || format!("P_g filtered ranks {:?}", env.filtered_ranks()))?;
    let rewriting = ok(enveloping_by_rewriting(&data, 3))?;
    need(rewriting.algebra.filtration_ranks() == expect, || format!("U(g) filtration ranks {:?}", rewriting.algebra.filtration_ranks()))?;
    let e = SparseVec::unit;
    for x in 0..3 {
        for y in 0..3 {
            let (lx, ly) = (env.left_operator(&e(x)), env.left_operator(&e(y)));
            let comm = env.mul(&lx, &ly).unwrap().sub(q, &env.mul(&ly, &lx).unwrap());
            need(comm == env.left_operator(data.bracket_basis(x, y)), || format!("commutator of {x} and {y}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} product identities; heisenberg filtered ranks {expect:?}"))
}

fn representability() -> Outcome {
    let q = GroundRing::Rationals;
    let mut degrees = 0;
    let mut run = |hom: &AlgebraHom, m: &AModule, window: std::ops::RangeInclusive<i64>, what: &str| -> Result<(), String> {
        for r in ok(representability_check(hom, m, window))? {
            need(r.passed(), || format!("{what}, degree {}: {r:?}", r.degree))?;
            degrees += 1;
        }
        Ok(())
    };
    for r in 1..=2 {
        let s = ok(symmetric_algebra(&module(q, r), 3))?.algebra;
        let id = ok(AlgebraHom::new(s.clone(), s.clone(), LinearMap::identity(q, s.dim())))?;
        run(&id, &ok(AModule::augmentation_ideal(s.clone()))?, -1..=1, &format!("S(rank {r}) into A_+"))?;
        run(&id, &ok(AModule::regular(s.clone()))?, -1..=1, &format!("S(rank {r}) into A"))?;
    }
    // x, y ↦ t
    let s2 = ok(symmetric_algebra(&module(q, 2), 3))?;
    let s1 = ok(symmetric_algebra(&module(q, 1), 3))?.algebra;
    let t = SparseVec::unit(1);
    let f = LinearMap::from_images(q, s1.dim(), vec![t.clone(), t]);
    let collapse = ok(extend_from_generators(&s2, s1.clone(), &f, 1))?;
    run(&collapse, &ok(AModule::augmentation_ideal(s1))?, -1..=1, "S(rank 2) → S(rank 1)")?;

    let free = ok(free_algebra(operad(OperadKind::Ass, q, 4), &module(q, 2), 3))?;
    let a = free.algebra.clone();
    let id = ok(AlgebraHom::new(a.clone(), a.clone(), LinearMap::identity(q, a.dim())))?;
    let trivial = ok(AModule::trivial(a.clone(), (0..3).map(|k| format!("m{k}")).collect(), vec![1; 3], 1))?;
    run(&id, &trivial, 0..=0, "Free_ass(rank 2) into a trivial module")?;
    run(&id, &ok(AModule::augmentation_ideal(a.clone()))?, -1..=1, "Free_ass(rank 2) into A_+")?;
    Ok(format!("{degrees} degrees, both directions"))
}

fn koszul_exactness() -> Outcome {
    let d = 6;
    let mut cells = 0;
    for ring in rings() {
        for r in 1..=3 {
            let k = ok(koszul_complex(&module(ring, r), d))?;
            let c = &k.augmented;
            let positions: Vec<i64> = c.positions().collect();
            for &n in &positions[1..] {
                let (Some(dn), Some(dm)) = (c.differential(n), c.differential(n - 1)) else { continue };
                let composite = ok(dm.compose(dn))?;
                need(composite.is_zero(), || format!("{ring} rank {r}: d∘d ≠ 0 out of position {n}"))?;
            }
            for &n in &positions {
                for e in 0..=d as i64 {
                    let h = c.homology(n, Some(e));
                    need(h.is_zero(), || format!("{ring} rank {r}: position {n} degree {e}: rank {} torsion {:?}", h.rank, h.torsion))?;
                    cells += 1;
                }
            }
        }
    }
    Ok(format!("{cells} (position, degree) cells exact"))
}

/// `S(g)` and `S(g)_+` cut down to what `Ext^e` in degree `j` sees. Below
/// the window the coefficients start in degree 1 and the algebra is kept
/// large enough to reach them.
fn window(r: usize, e: usize, j: i64) -> Result<(Arc<GradedAlgebra>, AModule), String> {
    let top = (e as i64 + 1 + j).max(1);
    let a = ok(symmetric_algebra(&module(GroundRing::Rationals, r), (top - j) as usize))?.algebra;
    let m = ok(ok(AModule::augmentation_ideal(a.clone()))?.truncate_above(top))?;
    Ok((a, m))
}

fn ext_of_symmetric_algebras() -> Outcome {
    // (r, e, j): Hom(Λ^e g, g) in degree 1 − e, zero below
    let cells = [(2, 2, -1), (2, 2, -2), (2, 2, -3), (3, 2, -1), (3, 2, -2), (3, 2, -3), (3, 3, -2), (3, 3, -3), (3, 3, -4)];
    let mut out = Vec::new();
    for (r, e, j) in cells {
        let expect = if j == 1 - e as i64 { binomial(r, e) * r } else { 0 };
        let (a, m) = window(r, e, j)?;
        let rep = ok(quillen_consistency(&a, &m, e, j))?;
        need(rep.agree(), || format!("r={r} Ext^{e}_{j}: routes disagree: {:?}", rep.comparison.witness))?;
        let (k, c) = (rep.koszul.rank(), rep.cochain.rank());
        need(k == expect && c == expect, || format!("r={r} Ext^{e}_{j}: koszul {k}, cochain {c}, expected {expect}"))?;
        out.push(format!("r={r} Ext^{e}_{j}={k}"));
    }
    Ok(out.join(", "))
}

fn battery(ring: GroundRing) -> Vec<LieAlgebraData> {
    vec![
        LieAlgebraData::sl2(ring),
        LieAlgebraData::heisenberg(ring),
        LieAlgebraData::solvable2(ring),
        LieAlgebraData::abelian(ring, 2),
        LieAlgebraData::abelian(ring, 3),
        LieAlgebraData::cyclic_nonjacobi(ring),
        LieAlgebraData::skew_nonjacobi(ring),
    ]
}

fn deformation_dichotomy() -> Outcome {
    let d = 4;
    let mut prolonged = 0;
    let mut obstructed = 0;
    for ring in [GroundRing::Rationals, GroundRing::prime_field(5).unwrap()] {
        for g in battery(ring) {
            let what = format!("{} over {ring}", g.name);
            let t = ok(level_one_from_bracket(&g, d))?;
            need(t.certificate().passed(), || format!("{what}: level-1 tower fails"))?;
            let o = ok(obstruction(&t))?;
            need(o.cocycle.passed(), || format!("{what}: obstruction is not a cocycle"))?;
            need(o.is_zero() == g.is_jacobi(), || format!("{what}: obstruction vanishing {} but Jacobi {}", o.is_zero(), g.is_jacobi()))?;
            if let Some(res) = &o.restriction {
                need(*res == jacobiator(&g), || format!("{what}: restriction differs from the Jacobiator"))?;
            }
            if !g.is_jacobi() {
                need(matches!(ok(prolong(&t))?, Prolongation::Obstructed(_)), || format!("{what}: prolonged"))?;
                obstructed += 1;
                continue;
            }
            let mut tower = t;
            let aut = ok(tower_automorphisms(&tower))?;
            need(aut.rank() == 0 && aut.same_span, || format!("{what}: automorphisms at level 1"))?;
            while tower.level() < d {
                let p = ok(prolong(&tower))?;
                need(p.space_rank() == Some(0), || format!("{what}: level {} has prolongation classes {:?}", tower.level() + 1, p.space_rank()))?;
                tower = p.tower().ok_or_else(|| format!("{what}: obstructed"))?.clone();
                need(tower.certificate().passed(), || format!("{what}: level {} fails", tower.level()))?;
                let aut = ok(tower_automorphisms(&tower))?;
                need(aut.rank() == 0 && aut.derivations.is_empty() && aut.same_span, || format!("{what}: automorphisms at level {}", tower.level()))?;
            }
            // the groups themselves: (H¹)_{−i−1} = 0 and Ω(A, A_+)_{−i−1} = 0
            let s = ok(symmetric_algebra(&g.module, d))?.algebra;
            let plus = ok(AModule::augmentation_ideal(s))?;
            for i in 1..d {
                let j = -(i as i64) - 1;
                need(derivations(&plus, j).is_empty(), || format!("{what}: derivations in degree {j}"))?;
                let (a, m) = window(g.rank(), 2, j)?;
                let h = ok(paper_h(&a, &m, 1, j))?;
                need(h.rank == 0 && h.torsion.is_empty(), || format!("{what}: H^1 in degree {j} has rank {}", h.rank))?;
            }
            prolonged += 1;
        }
    }
    Ok(format!("{prolonged} Jacobi brackets prolonged to level {d} uniquely, {obstructed} obstructed"))
}

fn pbw() -> Outcome {
    let cases = [
        (LieAlgebraData::sl2(GroundRing::Rationals), 6),
        (LieAlgebraData::solvable2(GroundRing::prime_field(5).unwrap()), 6),
        (LieAlgebraData::heisenberg(GroundRing::Integers), 4),
    ];
    let mut out = Vec::new();
    for (g, d) in cases {
        let what = format!("{} over {}", g.name, g.ring());
        let rep = ok(pbw_verify(&g, d))?;
        need(rep.passed(), || format!("{what}: {rep}"))?;
        need(rep.degrees.len() == d + 1, || format!("{what}: {} degrees", rep.degrees.len()))?;
        for c in &rep.degrees {
            let expect = binomial(c.degree + g.rank() - 1, c.degree);
            need(c.gr_rank == expect && c.torsion.is_empty(), || format!("{what}: degree {} rank {} torsion {:?}", c.degree, c.gr_rank, c.torsion))?;
        }
        let via = ok(pbw_via_deformation(&g, d))?;
        need(via.passed(), || format!("{what}: {via}"))?;
        need(via.phi.rank() == via.phi.src_dim && via.phi.src_dim == via.phi.dst_dim, || format!("{what}: φ′ is not invertible"))?;
        need(via.composition.len() == d + 1 && via.composition.iter().all(|&(_, id)| id), || format!("{what}: composition is not the identity"))?;
        out.push(format!("{} n≤{d}", g.name));
    }
    Ok(out.join(", "))
}

const COMMANDS: [&str; 10] = [
    "operad-check",
    "free-algebra",
    "derivations",
    "hochschild",
    "ext",
    "koszul-check",
    "deform",
    "pbw-verify",
    "pbw-deform",
    "envelope",
];

fn run_cli(args: &[String], threads: &str) -> Result<Vec<u8>, String> {
    let out = ok(Command::new(env!("CARGO_BIN_EXE_operad-forge")).args(args).env("OPERAD_FORGE_THREADS", threads).output())?;
    let mut bytes = format!("{:?}\n", out.status.code()).into_bytes();
    bytes.extend(out.stdout);
    bytes.extend(b"\n--\n");
    bytes.extend(out.stderr);
    Ok(bytes)
}

fn determinism() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs");
    let mut specs: Vec<PathBuf> = ok(std::fs::read_dir(&dir))?.filter_map(|e| e.ok().map(|e| e.path())).collect();
    specs.sort();
    let mut invocations: Vec<Vec<String>> = Vec::new();
    for c in COMMANDS {
        for s in &specs {
            invocations.push(vec![c.to_string(), s.display().to_string()]);
        }
    }
    invocations.push(vec!["pbw-verify".into(), dir.join("sl2.spec").display().to_string(), "--format".into(), "records".into()]);
    invocations.push(vec!["ext".into(), dir.join("sg2.spec").display().to_string(), "--format".into(), "records".into()]);
    let mut codes = [0usize; 3];
    for args in &invocations {
        let first = run_cli(args, "1")?;
        let second = run_cli(args, "1")?;
        let wide = run_cli(args, "4")?;
        need(first == second && first == wide, || format!("output differs for {}", args.join(" ")))?;
        let code = String::from_utf8_lossy(&first[..first.iter().position(|&b| b == b'\n').unwrap_or(0)]).to_string();
        match code.as_str() {
            "Some(0)" => codes[0] += 1,
            "Some(1)" => codes[1] += 1,
            _ => codes[2] += 1,
        }
    }
    Ok(format!("{} invocations × 3 runs identical (exit 0: {}, 1: {}, other: {})", invocations.len(), codes[0], codes[1], codes[2]))
}

fn main() {
    let criteria: [(usize, &str, Option<f64>, fn() -> Outcome); 9] = [
        (1, "operad axioms", Some(10.0), operads_satisfy_axioms),
        (2, "free-algebra adjunction", Some(30.0), free_algebra_adjunction),
        (3, "enveloping algebra oracles", Some(60.0), enveloping_oracles),
        (4, "square-zero representability", Some(30.0), representability),
        (5, "Koszul complex exactness", Some(60.0), koszul_exactness),
        (6, "Ext of symmetric algebras", Some(120.0), ext_of_symmetric_algebras),
        (7, "deformation dichotomy", Some(120.0), deformation_dichotomy),
        (8, "PBW by two routes", Some(180.0), pbw),
        (9, "CLI determinism", None, determinism),
    ];
    let mut failed = 0;
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        let in_time = limit.map_or(true, |l| secs < l);
        let pass = result.is_ok() && in_time;
        if !pass {
            failed += 1;
        }
        let limit = limit.map_or("no limit".to_string(), |l| format!("limit {l:.0}s"));
        let detail = match &result {
            Ok(s) if in_time => s.clone(),
            Ok(s) => format!("over time; {s}"),
            Err(e) => e.clone(),
        };
        println!("criterion {n}: {} {name} ({secs:.2}s, {limit}): {detail}", if pass { "PASS" } else { "FAIL" });
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
