use crate::linalg::{GroundRing, LinalgError};

/// Errors surfaced by the public operations. Each variant carries a stable
/// code (see [`Error::code`]) used by the command-line reports.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ring error: {0}")]
    Ring(String),
    #[error("no canonical ring map {0} -> {1}")]
    RingMap(GroundRing, GroundRing),
    #[error("dimension mismatch: {0}")]
    Dim(String),
    #[error("arity out of range: {0}")]
    Arity(String),
    #[error("beyond truncation: {0}")]
    Trunc(String),
    #[error("not homogeneous: {0}")]
    Degree(String),
    #[error("bracket is not antisymmetric at ({0}, {1})")]
    Antisym(String, String),
    #[error("module axioms fail: {0}")]
    Module(String),
    #[error("inconsistent setup: {0}")]
    Setup(String),
    #[error("unsupported operad: {0}")]
    Operad(String),
    #[error("no computation route applies: {0}")]
    Scope(String),
    #[error("Jacobi identity fails: {0}")]
    Jacobi(String),
    #[error("prolongation obstructed: {0}")]
    Obstructed(String),
    #[error("incompatible deformation levels: {0}")]
    Chain(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Ring(_) => "E_RING",
            Error::RingMap(..) => "E_RINGMAP",
            Error::Dim(_) => "E_DIM",
            Error::Arity(_) => "E_ARITY",
            Error::Trunc(_) => "E_TRUNC",
            Error::Degree(_) => "E_DEGREE",
            Error::Antisym(..) => "E_ANTISYM",
            Error::Module(_) => "E_MODULE",
            Error::Setup(_) => "E_SETUP",
            Error::Operad(_) => "E_OPERAD",
            Error::Scope(_) => "E_SCOPE",
            Error::Jacobi(_) => "E_JACOBI",
            Error::Obstructed(_) => "E_OBSTRUCTED",
            Error::Chain(_) => "E_CHAIN",
        }
    }
}

impl From<LinalgError> for Error {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::NotPrime(p) => Error::Ring(format!("{p} is not prime")),
            LinalgError::NoRingMap(a, b) => Error::RingMap(a, b),
            LinalgError::Dim(s) => Error::Dim(s),
            LinalgError::Ring(s) => Error::Ring(s),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Outcome of an exhaustive verification: how many instances were checked
/// and the first counterexample found, if any.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Check {
    pub checked: usize,
    pub witness: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    /// Records one instance; keeps only the first failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn merge(&mut self, other: Check) {
        self.checked += other.checked;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }
}
