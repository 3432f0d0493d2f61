//! Truncated symmetric operads as explicit tables.
//!
//! Arities run over `1..=max_arity`; inputs of an arity-`n` operation are
//! labelled `0..n`. Partial composition `f ∘_i g` plugs the output of `g`
//! into input `i` of `f` (0-based). A permutation `σ` acts on an operation
//! by relabelling its inputs, so that in any algebra
//! `(σ·f)(a_0, …, a_{n−1}) = f(a_{σ(0)}, …, a_{σ(n−1)})`.

mod binary;
mod check;
mod standard;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{BasedModule, GroundRing, LinearMap, SparseVec};
use crate::perm;

pub use binary::{BinaryDecomposition, BinaryTerm};
pub use check::AxiomReport;
pub use standard::{build_standard, lie_to_ass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperadKind {
    Com,
    Ass,
    Lie,
    Custom,
}

impl OperadKind {
    pub fn name(&self) -> &'static str {
        match self {
            OperadKind::Com => "com",
            OperadKind::Ass => "ass",
            OperadKind::Lie => "lie",
            OperadKind::Custom => "custom",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "com" => Some(OperadKind::Com),
            "ass" => Some(OperadKind::Ass),
            "lie" => Some(OperadKind::Lie),
            _ => None,
        }
    }
}

/// An element of `O(arity)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadElement {
    pub arity: usize,
    pub coords: SparseVec,
}

#[derive(Clone, Debug)]
pub struct FinOperad {
    kind: OperadKind,
    unital: bool,
    ring: GroundRing,
    max_arity: usize,
    spaces: Vec<BasedModule>,
    transpositions: Vec<Vec<LinearMap>>,
    unit: SparseVec,
    compositions: BTreeMap<(usize, usize, usize), Vec<SparseVec>>,
    decomposition: Arc<OnceLock<std::result::Result<BinaryDecomposition, Error>>>,
}

impl FinOperad {
    /// Assembles an operad from raw tables. `compositions[(m, i, n)]` lists
    /// `a ∘_i b` at index `a · dim O(n) + b`. Axioms are not checked here.
    pub fn from_parts(
        kind: OperadKind,
        unital: bool,
        ring: GroundRing,
        spaces: Vec<BasedModule>,
        transpositions: Vec<Vec<LinearMap>>,
        unit: SparseVec,
        compositions: BTreeMap<(usize, usize, usize), Vec<SparseVec>>,
    ) -> Result<Self> {
        let max_arity = spaces.len();
        if max_arity == 0 {
            return Err(Error::Arity("an operad needs arity 1".into()));
        }
        if transpositions.len() != max_arity {
            return Err(Error::Dim("one list of transpositions per arity expected".into()));
        }
        for (k, ts) in transpositions.iter().enumerate() {
            let d = spaces[k].rank();
            if ts.len() != k {
                return Err(Error::Dim(format!("arity {} needs {} transpositions", k + 1, k)));
            }
            if ts.iter().any(|t| t.src_dim != d || t.dst_dim != d) {
                return Err(Error::Dim(format!("transposition size mismatch in arity {}", k + 1)));
            }
        }
        for m in 1..=max_arity {
            for n in 1..=max_arity + 1 - m {
                for i in 0..m {
                    let t = compositions
                        .get(&(m, i, n))
                        .ok_or_else(|| Error::Dim(format!("missing composition table ({m}, {i}, {n})")))?;
                    if t.len() != spaces[m - 1].rank() * spaces[n - 1].rank() {
                        return Err(Error::Dim(format!("composition table ({m}, {i}, {n}) has wrong size")));
                    }
                }
            }
        }
        Ok(FinOperad {
            kind,
            unital,
            ring,
            max_arity,
            spaces,
            transpositions,
            unit,
            compositions,
            decomposition: Arc::new(OnceLock::new()),
        })
    }

    pub fn kind(&self) -> OperadKind {
        self.kind
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn name(&self) -> String {
        if self.unital {
            format!("{}-unital", self.kind.name())
        } else {
            self.kind.name().to_string()
        }
    }

    pub fn ring(&self) -> GroundRing {
        self.ring
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn space(&self, n: usize) -> &BasedModule {
        &self.spaces[n - 1]
    }

    pub fn dim(&self, n: usize) -> usize {
        self.spaces[n - 1].rank()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.spaces.iter().map(BasedModule::rank).collect()
    }

    pub fn unit(&self) -> OperadElement {
        OperadElement { arity: 1, coords: self.unit.clone() }
    }

    pub fn basis_element(&self, n: usize, idx: usize) -> OperadElement {
        OperadElement { arity: n, coords: SparseVec::unit(idx) }
    }

    pub fn element(&self, n: usize, coords: SparseVec) -> Result<OperadElement> {
        if n == 0 || n > self.max_arity {
            return Err(Error::Arity(format!("arity {n} outside 1..={}", self.max_arity)));
        }
        if coords.max_index().is_some_and(|m| m >= self.dim(n)) {
            return Err(Error::Dim(format!("coordinates exceed rank of O({n})")));
        }
        Ok(OperadElement { arity: n, coords })
    }

    /// `a ∘_i b` on basis elements.
    pub fn compose_basis(&self, m: usize, i: usize, a: usize, n: usize, b: usize) -> &SparseVec {
        &self.compositions[&(m, i, n)][a * self.dim(n) + b]
    }

    pub fn partial_compose(&self, f: &OperadElement, i: usize, g: &OperadElement) -> Result<OperadElement> {
        let (m, n) = (f.arity, g.arity);
        if i >= m {
            return Err(Error::Arity(format!("slot {i} outside arity {m}")));
        }
        if m + n - 1 > self.max_arity {
            return Err(Error::Arity(format!("{m} + {n} - 1 exceeds max arity {}", self.max_arity)));
        }
        let mut out = SparseVec::new();
        for (a, ca) in f.coords.iter() {
            for (b, cb) in g.coords.iter() {
                let c = self.ring.mul(ca, cb);
                out.add_scaled(self.ring, &c, self.compose_basis(m, i, a, n, b));
            }
        }
        Ok(OperadElement { arity: m + n - 1, coords: out })
    }

    /// Action of the transposition of inputs `k` and `k+1` on `O(n)`.
    pub fn transposition(&self, n: usize, k: usize) -> &LinearMap {
        &self.transpositions[n - 1][k]
    }

    pub fn transpositions(&self, n: usize) -> &[LinearMap] {
        &self.transpositions[n - 1]
    }

    /// `σ · x` for an arbitrary permutation of the inputs.
    pub fn act(&self, sigma: &[usize], x: &OperadElement) -> OperadElement {
        debug_assert_eq!(sigma.len(), x.arity);
        let mut v = x.coords.clone();
        for k in perm::adjacent_word(sigma) {
            v = self.transpositions[x.arity - 1][k].apply(&v);
        }
        OperadElement { arity: x.arity, coords: v }
    }

    /// For unital algebras over com or ass: the operation obtained by
    /// feeding the unit into input `slot`, i.e. `f(…, 1, …)` as an operation
    /// of arity `n − 1`. `None` for other operads or arity 1.
    pub fn remove_input(&self, n: usize, e: usize, slot: usize) -> Option<OperadElement> {
        if n < 2 || slot >= n {
            return None;
        }
        match self.kind {
            OperadKind::Com => Some(self.basis_element(n - 1, 0)),
            OperadKind::Ass => {
                let w: Vec<usize> = perm::unrank(n, e)
                    .into_iter()
                    .filter(|&l| l != slot)
                    .map(|l| if l > slot { l - 1 } else { l })
                    .collect();
                Some(self.basis_element(n - 1, perm::rank(&w)))
            }
            _ => None,
        }
    }

    /// Overwrites one composition entry; meant for constructing failing
    /// instances in tests.
    pub fn set_composition(&mut self, key: (usize, usize, usize), a: usize, b: usize, value: SparseVec) {
        let n = key.2;
        let dn = self.dim(n);
        self.compositions.get_mut(&key).expect("composition key")[a * dn + b] = value;
        self.decomposition = Arc::new(OnceLock::new());
    }

    pub fn check_axioms(&self) -> AxiomReport {
        check::check_axioms(self)
    }

    /// Tensors every table with `target` along the canonical ring map and
    /// re-checks the axioms.
    pub fn base_change(&self, target: GroundRing) -> Result<FinOperad> {
        if !self.ring.has_canonical_map_to(target) {
            return Err(Error::RingMap(self.ring, target));
        }
        let map_vec = |v: &SparseVec| -> Result<SparseVec> {
            let mut out = SparseVec::new();
            for (i, c) in v.iter() {
                out.add_at(target, i, &self.ring.map_scalar(target, c)?);
            }
            Ok(out)
        };
        let map_lin = |l: &LinearMap| -> Result<LinearMap> {
            Ok(LinearMap::from_images(target, l.dst_dim, l.images.iter().map(map_vec).collect::<Result<_>>()?))
        };
        let spaces = self
            .spaces
            .iter()
            .map(|s| BasedModule { ring: target, labels: s.labels.clone() })
            .collect();
        let transpositions = self
            .transpositions
            .iter()
            .map(|ts| ts.iter().map(map_lin).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let compositions = self
            .compositions
            .iter()
            .map(|(k, t)| Ok((*k, t.iter().map(map_vec).collect::<Result<Vec<_>>>()?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let out = FinOperad::from_parts(
            self.kind,
            self.unital,
            target,
            spaces,
            transpositions,
            map_vec(&self.unit)?,
            compositions,
        )?;
        let report = out.check_axioms();
        if !report.passed() {
            return Err(Error::Operad(format!("axioms fail after base change to {target}: {report}")));
        }
        Ok(out)
    }

    /// Expression of every basis operation through binary generators.
    pub fn binary_decomposition(&self) -> Result<&BinaryDecomposition> {
        self.decomposition
            .get_or_init(|| binary::decompose(self))
            .as_ref()
            .map_err(Clone::clone)
    }
}
