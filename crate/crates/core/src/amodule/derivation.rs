use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{tuples_with_degree_at_most, AlgebraHom, GradedAlgebra};
use crate::error::{Check, Error, Result};
use crate::linalg::{ExactMatrix, LinearMap, SparseVec};

use super::{solutions_to_maps, AModule};

/// Basis of the derivations `A → M` raising degree by `j`.
///
/// The Leibniz condition is imposed on every pair of basis vectors whose
/// product lies inside the algebra's truncation and lands inside the
/// module's represented range; higher operations follow from the binary
/// ones.
pub fn derivations(module: &AModule, j: i64) -> Vec<LinearMap> {
    let a = &**module.algebra();
    let ring = module.ring();
    let mut unknown = BTreeMap::new();
    let mut cols = Vec::new();
    for x in 0..a.dim() {
        for v in module.basis_of_degree(a.degree(x) as i64 + j) {
            unknown.insert((x, v), cols.len());
            cols.push((x, v));
        }
    }
    let of = |x: usize| -> Vec<(usize, usize)> {
        module.basis_of_degree(a.degree(x) as i64 + j).into_iter().map(|v| (v, unknown[&(x, v)])).collect()
    };
    let mut rows = Vec::new();
    for beta in 0..a.operad().dim(2) {
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                let deg = a.degree(x) + a.degree(y);
                if deg > a.max_degree() || deg as i64 + j > module.top() {
                    continue;
                }
                let mut eq: BTreeMap<usize, SparseVec> = BTreeMap::new();
                // φ(β(x, y))
                for (z, c) in a.mul_basis(beta, x, y).iter() {
                    for (w, col) in of(z) {
                        eq.entry(w).or_default().add_at(ring, col, c);
                    }
                }
                // − β(φx, y) − β(x, φy)
                for (v, col) in of(x) {
                    for (w, c) in module.act_right(beta, y, v).iter() {
                        eq.entry(w).or_default().add_at(ring, col, &ring.neg(c));
                    }
                }
                for (v, col) in of(y) {
                    for (w, c) in module.act_left(beta, x, v).iter() {
                        eq.entry(w).or_default().add_at(ring, col, &ring.neg(c));
                    }
                }
                rows.extend(eq.into_values().filter(|r| !r.is_zero()));
            }
        }
    }
    solutions_to_maps(ring, &rows, &cols, a.dim(), module.dim())
}

/// Derivation bases for every degree of `window`, in increasing order.
pub fn derivations_in_window(module: &AModule, window: std::ops::RangeInclusive<i64>) -> Vec<(i64, Vec<LinearMap>)> {
    window.map(|j| (j, derivations(module, j))).collect()
}

/// Verifies `φ(e(a_1, …, a_n)) = Σ_s e(a_1, …, φ(a_s), …, a_n)` for every
/// basis operation and basis tuple of total degree at most `max_total_degree`
/// whose value is represented.
pub fn check_derivation(module: &AModule, phi: &LinearMap, j: i64, max_total_degree: usize) -> Check {
    check_derivations(module, std::slice::from_ref(phi), j, max_total_degree)
}

/// [`check_derivation`] for several maps at once. Both sides are linear in
/// `φ`, so the operations are evaluated once per basis tuple and module
/// basis vector and shared between the maps.
pub fn check_derivations(module: &AModule, phis: &[LinearMap], j: i64, max_total_degree: usize) -> Check {
    let a = &**module.algebra();
    let op = a.operad();
    let ring = module.ring();
    let mut c = Check::default();
    let d = max_total_degree.min(a.max_degree());
    for n in 1..=op.max_arity() {
        let tuples = tuples_with_degree_at_most(a.degrees(), n, d);
        for e in 0..op.dim(n) {
            let ee = op.basis_element(n, e);
            for t in &tuples {
                let deg: usize = t.iter().map(|&x| a.degree(x)).sum();
                if deg as i64 + j > module.top() {
                    continue;
                }
                let args: Vec<SparseVec> = t.iter().map(|&x| SparseVec::unit(x)).collect();
                let value = a.act(&ee, &args).expect("arity");
                // e(a_1, …, m, …, a_n) for each slot s and each m that occurs
                let mut evals: Vec<BTreeMap<usize, SparseVec>> = vec![BTreeMap::new(); n];
                for (s, cache) in evals.iter_mut().enumerate() {
                    let mut rest = args.clone();
                    rest.remove(s);
                    for phi in phis {
                        for (m, _) in phi.images[t[s]].iter() {
                            cache
                                .entry(m)
                                .or_insert_with(|| module.eval(&ee, &rest, s, &SparseVec::unit(m)).expect("arity"));
                        }
                    }
                }
                for (k, phi) in phis.iter().enumerate() {
                    let lhs = phi.apply(&value);
                    let mut rhs = SparseVec::new();
                    for (s, cache) in evals.iter().enumerate() {
                        for (m, coef) in phi.images[t[s]].iter() {
                            rhs.add_scaled(ring, coef, &cache[&m]);
                        }
                    }
                    c.record(lhs == rhs, || {
                        let names: Vec<&str> = t.iter().map(|&x| a.labels()[x].as_str()).collect();
                        let which = if phis.len() > 1 { format!("map {k}: ") } else { String::new() };
                        format!(
                            "{which}{} on ({}): {} vs {}",
                            op.space(n).labels[e],
                            names.join(", "),
                            module.display(&lhs),
                            module.display(&rhs)
                        )
                    });
                }
            }
        }
    }
    c
}

/// `A ⊕ M` with `M · M = 0`.
#[derive(Clone, Debug)]
pub struct SquareZero {
    pub algebra: Arc<GradedAlgebra>,
    /// Index in the extension of each basis vector of `A`.
    pub a_index: Vec<usize>,
    /// Index in the extension of each basis vector of `M`.
    pub m_index: Vec<usize>,
    pub projection: AlgebraHom,
    pub section: LinearMap,
}

impl SquareZero {
    /// The `M`-coordinates of a vector of the extension.
    pub fn m_part(&self, v: &SparseVec) -> SparseVec {
        let mut pos = vec![usize::MAX; self.algebra.dim()];
        for (k, &g) in self.m_index.iter().enumerate() {
            pos[g] = k;
        }
        v.map_indices(self.algebra.ring(), |g| (pos[g] != usize::MAX).then_some(pos[g]))
    }
}

pub fn square_zero_extension(module: &AModule) -> Result<SquareZero> {
    let a = module.algebra().clone();
    if let Some(m) = (0..module.dim()).find(|&m| module.degree(m) < 0) {
        return Err(Error::Degree(format!("{} has negative degree", module.labels()[m])));
    }
    let report = module.check(a.max_degree());
    if !report.passed() {
        return Err(Error::Module(report.to_string().trim_end().replace('\n', "; ")));
    }
    build_square_zero(module)
}

/// [`square_zero_extension`] for a module already known to satisfy the
/// module axioms.
fn build_square_zero(module: &AModule) -> Result<SquareZero> {
    let a = module.algebra().clone();
    let ring = a.ring();
    let top = a.max_degree().max(module.top().max(0) as usize);
    let mut components = vec![Vec::new(); top + 1];
    let mut a_index = vec![0; a.dim()];
    let mut m_index = vec![0; module.dim()];
    let mut next = 0;
    for (d, comp) in components.iter_mut().enumerate() {
        for x in a.range(d.min(a.max_degree())).filter(|_| d <= a.max_degree()) {
            a_index[x] = next;
            comp.push(a.labels()[x].clone());
            next += 1;
        }
        for m in module.basis_of_degree(d as i64) {
            m_index[m] = next;
            comp.push(format!("{}'", module.labels()[m]));
            next += 1;
        }
    }
    let dim = next;
    let na = a.dim();
    let mut tables = Vec::with_capacity(a.operad().dim(2));
    for beta in 0..a.operad().dim(2) {
        let mut t = vec![SparseVec::new(); dim * dim];
        let to_a = |v: &SparseVec| v.map_indices(ring, |x| Some(a_index[x]));
        let to_m = |v: &SparseVec| v.map_indices(ring, |m| Some(m_index[m]));
        for x in 0..na {
            for y in 0..na {
                t[a_index[x] * dim + a_index[y]] = to_a(a.mul_basis(beta, x, y));
            }
            for m in 0..module.dim() {
                t[a_index[x] * dim + m_index[m]] = to_m(module.act_left(beta, x, m));
                t[m_index[m] * dim + a_index[x]] = to_m(module.act_right(beta, x, m));
            }
        }
        tables.push(t);
    }
    let unit = a.unit().map(|u| a_index[u]);
    let ext = Arc::new(GradedAlgebra::new(a.operad().clone(), components, tables, unit, a.is_augmented())?);
    let mut proj = vec![SparseVec::new(); dim];
    for (x, &g) in a_index.iter().enumerate() {
        proj[g] = SparseVec::unit(x);
    }
    let projection = AlgebraHom::new(ext.clone(), a.clone(), LinearMap::from_images(ring, na, proj))?;
    let section = LinearMap::from_images(ring, dim, a_index.iter().map(|&g| SparseVec::unit(g)).collect());
    Ok(SquareZero { algebra: ext, a_index, m_index, projection, section })
}

/// Both sides of `Ω(B, M)_j ≅ {homomorphisms B → A ⊕ T^{−j}M over A}` in one
/// degree.
#[derive(Clone, Debug)]
pub struct DegreeRepresentability {
    pub degree: i64,
    pub derivation_rank: usize,
    pub hom_rank: usize,
    /// Every derivation `d` gives the homomorphism `b ↦ (φ(b), d(b))`.
    pub forward: Check,
    /// The `M`-component of every solution hom is a derivation.
    pub backward: Check,
    /// The two solution spaces coincide as subspaces of `Hom_R(B, M)`.
    pub same_span: bool,
}

impl DegreeRepresentability {
    pub fn passed(&self) -> bool {
        self.derivation_rank == self.hom_rank && self.forward.passed() && self.backward.passed() && self.same_span
    }
}

/// Checks that derivations `B → M` (with `M` an `A`-module pulled back along
/// `hom: B → A`) correspond to algebra homomorphisms `B → A ⊕ M` lifting
/// `hom`, for each degree in `window`.
pub fn representability_check(
    hom: &AlgebraHom,
    module: &AModule,
    window: std::ops::RangeInclusive<i64>,
) -> Result<Vec<DegreeRepresentability>> {
    if module.algebra().labels() != hom.target.labels() || module.algebra().dim() != hom.target.dim() {
        return Err(Error::Setup("the module is not over the target of the homomorphism".into()));
    }
    let b = hom.source.clone();
    let ring = b.ring();
    let report = module.check(module.algebra().max_degree());
    if !report.passed() {
        return Err(Error::Module(report.to_string().trim_end().replace('\n', "; ")));
    }
    let pulled = module.restrict(hom)?;
    let mut out = Vec::new();
    for j in window {
        let ders = derivations(&pulled, j);
        // degree-j derivations are degree-preserving maps into T^{−j}M
        let shifted = module.shift(-j).truncate_below(0)?;
        let keep: Vec<usize> = (0..module.dim()).filter(|&m| module.degree(m) - j >= 0).collect();
        // shifting and dropping negative degrees keep the axioms checked above
        let sz = build_square_zero(&shifted)?;
        let e = &*sz.algebra;
        let base = sz.section.compose(&hom.map)?;
        let hom_maps = lifting_homs(&b, &sz, &base);

        let mut forward = Check::default();
        let mut backward = Check::default();
        let to_ext = |d: &LinearMap| -> Result<LinearMap> {
            let mut images = base.images.clone();
            for (x, img) in images.iter_mut().enumerate() {
                for (m, c) in d.images[x].iter() {
                    let k = keep.iter().position(|&q| q == m).ok_or_else(|| Error::Degree("derivation leaves the window".into()))?;
                    img.add_at(ring, sz.m_index[k], c);
                }
            }
            Ok(LinearMap::from_images(ring, e.dim(), images))
        };
        let zero = LinearMap::zero(ring, b.dim(), module.dim());
        for d in std::iter::once(&zero).chain(ders.iter()) {
            let psi = AlgebraHom::new(b.clone(), sz.algebra.clone(), to_ext(d)?)?;
            let mut c = psi.check(b.max_degree());
            let lifts = sz.projection.map.compose(&psi.map)? == hom.map;
            c.record(lifts, || "the homomorphism does not lift the given one".into());
            forward.merge(c);
        }
        let from_ext = |psi: &LinearMap| -> LinearMap {
            let images = psi
                .images
                .iter()
                .map(|v| sz.m_part(v).map_indices(ring, |k| Some(keep[k])))
                .collect();
            LinearMap::from_images(ring, module.dim(), images)
        };
        let mut hom_parts: Vec<LinearMap> = hom_maps.iter().map(from_ext).collect();
        if hom_parts.len() > 1 {
            let mut sum = LinearMap::zero(ring, b.dim(), module.dim());
            for h in &hom_parts {
                for (x, img) in sum.images.iter_mut().enumerate() {
                    img.add(ring, &h.images[x]);
                }
            }
            hom_parts.push(sum);
        }
        backward.merge(check_derivations(&pulled, &hom_parts, j, b.max_degree()));
        let flat = |maps: &[LinearMap]| -> Vec<SparseVec> {
            maps.iter()
                .map(|f| {
                    let mut v = SparseVec::new();
                    for (x, img) in f.images.iter().enumerate() {
                        for (m, c) in img.iter() {
                            v.add_at(ring, x * module.dim() + m, c);
                        }
                    }
                    v
                })
                .collect()
        };
        let dv = flat(&ders);
        let hv = flat(&hom_parts[..hom_maps.len()]);
        let ncols = b.dim() * module.dim();
        let rank = |rows: Vec<SparseVec>| ExactMatrix::new(ring, rows.len(), ncols, rows).rank();
        let joint = rank(dv.iter().chain(hv.iter()).cloned().collect());
        let same_span = joint == rank(dv.clone()) && joint == rank(hv.clone());
        out.push(DegreeRepresentability {
            degree: j,
            derivation_rank: ders.len(),
            hom_rank: hom_maps.len(),
            forward,
            backward,
            same_span,
        });
    }
    Ok(out)
}

/// Basis of the differences `ψ − base` over all degree-preserving algebra
/// homomorphisms `ψ: B → A ⊕ M` with `A`-component `base`, solved from the
/// multiplication table of the extension.
fn lifting_homs(b: &Arc<GradedAlgebra>, sz: &SquareZero, base: &LinearMap) -> Vec<LinearMap> {
    let e = &*sz.algebra;
    let ring = b.ring();
    let mut unknown = BTreeMap::new();
    let mut cols = Vec::new();
    for x in 0..b.dim() {
        for &g in &sz.m_index {
            if e.degree(g) == b.degree(x) {
                unknown.insert((x, g), cols.len());
                cols.push((x, g));
            }
        }
    }
    let vars = |x: usize| -> Vec<(usize, usize)> {
        sz.m_index.iter().filter_map(|&g| unknown.get(&(x, g)).map(|&c| (g, c))).collect()
    };
    let mut rows = Vec::new();
    for beta in 0..b.operad().dim(2) {
        for x in 0..b.dim() {
            for y in 0..b.dim() {
                let deg = b.degree(x) + b.degree(y);
                if deg > b.max_degree() || deg > e.max_degree() {
                    continue;
                }
                let mut eq: BTreeMap<usize, SparseVec> = BTreeMap::new();
                // ψ(β(x, y)) − β(ψx, ψy), linear part in the unknowns
                for (z, c) in b.mul_basis(beta, x, y).iter() {
                    for (g, col) in vars(z) {
                        eq.entry(g).or_default().add_at(ring, col, c);
                    }
                }
                for (g, col) in vars(x) {
                    let v = e.product(beta, &SparseVec::unit(g), &base.images[y]);
                    for (w, c) in v.iter() {
                        eq.entry(w).or_default().add_at(ring, col, &ring.neg(c));
                    }
                }
                for (g, col) in vars(y) {
                    let v = e.product(beta, &base.images[x], &SparseVec::unit(g));
                    for (w, c) in v.iter() {
                        eq.entry(w).or_default().add_at(ring, col, &ring.neg(c));
                    }
                }
                rows.extend(eq.into_values().filter(|r| !r.is_zero()));
            }
        }
    }
    let mut maps = solutions_to_maps(ring, &rows, &cols, b.dim(), e.dim());
    for m in &mut maps {
        for (x, img) in m.images.iter_mut().enumerate() {
            img.add(ring, &base.images[x]);
        }
    }
    // report the solutions as full homomorphisms ψ = base + d
    maps
}
