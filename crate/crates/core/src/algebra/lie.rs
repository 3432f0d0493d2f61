use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{BasedModule, GroundRing, LinearMap, SparseVec};
use crate::operad::{build_standard, OperadKind};

use super::exterior::increasing_tuples;
use super::GradedAlgebra;

/// Structure constants `[x_a, x_b] = Σ_k c_{ab}^k x_k` of an antisymmetric
/// bracket. The Jacobi identity is recorded, not required.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraData {
    pub name: String,
    pub module: BasedModule,
    table: Vec<SparseVec>,
    jacobi: bool,
}

impl LieAlgebraData {
    /// `table[a · r + b] = [x_a, x_b]`.
    pub fn from_table(name: &str, module: BasedModule, table: Vec<SparseVec>) -> Result<Self> {
        let r = module.rank();
        let ring = module.ring;
        if table.len() != r * r || table.iter().any(|v| v.max_index().is_some_and(|m| m >= r)) {
            return Err(Error::Dim(format!("bracket table must be {r}x{r} with values in the module")));
        }
        for a in 0..r {
            for b in a..r {
                let sum = {
                    let mut s = table[a * r + b].clone();
                    s.add(ring, &table[b * r + a]);
                    s
                };
                if !sum.is_zero() || (a == b && !table[a * r + a].is_zero()) {
                    return Err(Error::Antisym(module.labels[a].clone(), module.labels[b].clone()));
                }
            }
        }
        let mut data = LieAlgebraData { name: name.to_string(), module, table, jacobi: false };
        data.jacobi = jacobiator(&data).is_zero();
        Ok(data)
    }

    /// Builds the table from entries `[x_a, x_b] = v` with `a ≠ b`; the
    /// opposite entries are filled in by antisymmetry.
    pub fn from_brackets(name: &str, module: BasedModule, entries: &[(usize, usize, SparseVec)]) -> Result<Self> {
        let r = module.rank();
        let ring = module.ring;
        let mut table: Vec<Option<SparseVec>> = vec![None; r * r];
        for (a, b, v) in entries {
            let (a, b) = (*a, *b);
            if a >= r || b >= r {
                return Err(Error::Dim(format!("bracket index ({a}, {b}) out of range")));
            }
            let neg = v.neg(ring);
            for (k, val) in [(a * r + b, v.clone()), (b * r + a, neg)] {
                match &table[k] {
                    Some(old) if *old != val => {
                        return Err(Error::Antisym(module.labels[a].clone(), module.labels[b].clone()))
                    }
                    _ => table[k] = Some(val),
                }
            }
        }
        let table = table.into_iter().map(Option::unwrap_or_default).collect();
        Self::from_table(name, module, table)
    }

    pub fn ring(&self) -> GroundRing {
        self.module.ring
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    pub fn labels(&self) -> &[String] {
        &self.module.labels
    }

    pub fn is_jacobi(&self) -> bool {
        self.jacobi
    }

    pub fn table(&self) -> &[SparseVec] {
        &self.table
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &SparseVec {
        &self.table[a * self.rank() + b]
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let ring = self.ring();
        let mut out = SparseVec::new();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(ring, &ring.mul(ca, cb), self.bracket_basis(a, b));
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(SparseVec::is_zero)
    }

    /// Same constants over another ring (along the canonical map).
    pub fn base_change(&self, target: GroundRing) -> Result<Self> {
        let ring = self.ring();
        let table = self
            .table
            .iter()
            .map(|v| {
                let mut out = SparseVec::new();
                for (i, c) in v.iter() {
                    out.add_at(target, i, &ring.map_scalar(target, c)?);
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(&self.name, BasedModule { ring: target, labels: self.module.labels.clone() }, table)
    }

    /// The bracket as an algebra over the Lie operad, concentrated in degree 0.
    pub fn to_algebra(&self) -> Result<GradedAlgebra> {
        self.to_algebra_with_arity(3)
    }

    /// As [`Self::to_algebra`], over the Lie operad truncated at `max_arity`.
    pub fn to_algebra_with_arity(&self, max_arity: usize) -> Result<GradedAlgebra> {
        let op = Arc::new(build_standard(OperadKind::Lie, false, self.ring(), max_arity)?);
        GradedAlgebra::from_product(op, vec![self.module.labels.clone()], self.table.clone(), None, false)
    }

    fn module_of(ring: GroundRing, labels: &[&str]) -> BasedModule {
        BasedModule { ring, labels: labels.iter().map(|s| s.to_string()).collect() }
    }

    fn build(name: &str, ring: GroundRing, labels: &[&str], entries: &[(usize, usize, &[(usize, i64)])]) -> Self {
        let module = Self::module_of(ring, labels);
        let entries: Vec<(usize, usize, SparseVec)> =
            entries.iter().map(|&(a, b, v)| (a, b, SparseVec::from_ints(ring, v))).collect();
        Self::from_brackets(name, module, &entries).expect("built-in bracket is antisymmetric")
    }

    /// `sl2` with basis `e, f, h`: `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f`.
    pub fn sl2(ring: GroundRing) -> Self {
        Self::build("sl2", ring, &["e", "f", "h"], &[(0, 1, &[(2, 1)]), (2, 0, &[(0, 2)]), (2, 1, &[(1, -2)])])
    }

    /// Heisenberg algebra: `[x,y] = z`, `z` central.
    pub fn heisenberg(ring: GroundRing) -> Self {
        Self::build("heisenberg", ring, &["x", "y", "z"], &[(0, 1, &[(2, 1)])])
    }

    /// The non-abelian two-dimensional algebra `[x,y] = y`.
    pub fn solvable2(ring: GroundRing) -> Self {
        Self::build("solvable2", ring, &["x", "y"], &[(0, 1, &[(1, 1)])])
    }

    pub fn abelian(ring: GroundRing, rank: usize) -> Self {
        let labels: Vec<String> = (1..=rank).map(|k| format!("a{k}")).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let mut d = Self::build("abelian", ring, &refs, &[]);
        d.name = format!("abelian{rank}");
        d
    }

    /// `[e1,e2] = e1`, `[e2,e3] = e2`, `[e3,e1] = e3`; fails Jacobi.
    pub fn cyclic_nonjacobi(ring: GroundRing) -> Self {
        Self::build(
            "cyclic-nonjacobi",
            ring,
            &["e1", "e2", "e3"],
            &[(0, 1, &[(0, 1)]), (1, 2, &[(1, 1)]), (2, 0, &[(2, 1)])],
        )
    }

    /// `[e1,e2] = e1`, `[e1,e3] = e1`, `[e2,e3] = e3`; fails Jacobi.
    pub fn skew_nonjacobi(ring: GroundRing) -> Self {
        Self::build(
            "skew-nonjacobi",
            ring,
            &["e1", "e2", "e3"],
            &[(0, 1, &[(0, 1)]), (0, 2, &[(0, 1)]), (1, 2, &[(2, 1)])],
        )
    }
}

/// Validates the constants and tags them with the Jacobi test result.
pub fn lie_from_constants(data: LieAlgebraData) -> Result<LieAlgebraData> {
    LieAlgebraData::from_table(&data.name, data.module.clone(), data.table.clone())
}

/// `J(x∧y∧z) = [[x,y],z] + [[y,z],x] + [[z,x],y]` on increasing basis triples.
pub fn jacobiator(data: &LieAlgebraData) -> LinearMap {
    let ring = data.ring();
    let images = increasing_tuples(data.rank(), 3)
        .into_iter()
        .map(|t| {
            let (x, y, z) = (SparseVec::unit(t[0]), SparseVec::unit(t[1]), SparseVec::unit(t[2]));
            let mut j = data.bracket(&data.bracket(&x, &y), &z);
            j.add(ring, &data.bracket(&data.bracket(&y, &z), &x));
            j.add(ring, &data.bracket(&data.bracket(&z, &x), &y));
            j
        })
        .collect();
    LinearMap::from_images(ring, data.rank(), images)
}
