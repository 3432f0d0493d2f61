use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LinalgError;

/// Exact scalar. Rationals are stored reduced; integers have denominator 1;
/// prime-field residues are integers in `0..p`.
pub type Scalar = BigRational;

/// The ground ring every computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroundRing {
    Rationals,
    Integers,
    PrimeField(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl GroundRing {
    pub fn prime_field(p: u64) -> Result<Self, LinalgError> {
        if is_prime(p) {
            Ok(GroundRing::PrimeField(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            GroundRing::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, GroundRing::Integers)
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(&self, n: BigInt) -> Scalar {
        self.reduce(Scalar::from_integer(n))
    }

    /// Brings an arbitrary rational into canonical form for this ring.
    ///
    /// For prime fields the denominator is inverted modulo `p`; a denominator
    /// divisible by `p` is a caller bug and panics.
    pub fn reduce(&self, x: Scalar) -> Scalar {
        match self {
            GroundRing::PrimeField(p) => {
                let p = BigInt::from(*p);
                let num = x.numer().mod_floor(&p);
                let den = x.denom().mod_floor(&p);
                assert!(!den.is_zero(), "denominator divisible by the characteristic");
                let inv = mod_inverse(&den, &p);
                Scalar::from_integer((num * inv).mod_floor(&p))
            }
            _ => x,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            GroundRing::PrimeField(_) => self.reduce(a + b),
            _ => a + b,
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            GroundRing::PrimeField(_) => self.reduce(a - b),
            _ => a - b,
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            GroundRing::PrimeField(_) => self.reduce(a * b),
            _ => a * b,
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            GroundRing::PrimeField(_) => self.reduce(-a),
            _ => -a,
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match self {
            GroundRing::Integers => a.abs().is_one(),
            _ => !a.is_zero(),
        }
    }

    /// Multiplicative inverse, if it exists in this ring.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if !self.is_unit(a) {
            return None;
        }
        match self {
            GroundRing::PrimeField(p) => {
                let p = BigInt::from(*p);
                Some(Scalar::from_integer(mod_inverse(&a.to_integer(), &p)))
            }
            _ => Some(a.recip()),
        }
    }

    /// Exact quotient `a / b`; over the integers returns `None` unless `b | a`.
    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        if b.is_zero() {
            return None;
        }
        match self {
            GroundRing::Integers => {
                let (q, r) = a.to_integer().div_rem(&b.to_integer());
                r.is_zero().then(|| Scalar::from_integer(q))
            }
            GroundRing::Rationals => Some(a / b),
            GroundRing::PrimeField(_) => Some(self.mul(a, &self.inv(b)?)),
        }
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match self {
            GroundRing::Rationals => true,
            GroundRing::Integers => a.is_integer(),
            GroundRing::PrimeField(p) => {
                a.is_integer() && !a.is_negative() && a.to_integer() < BigInt::from(*p)
            }
        }
    }

    /// Whether a canonical ring map `self -> target` exists.
    pub fn has_canonical_map_to(&self, target: GroundRing) -> bool {
        match (self, target) {
            (GroundRing::Integers, _) => true,
            (a, b) => *a == b,
        }
    }

    pub fn map_scalar(&self, target: GroundRing, a: &Scalar) -> Result<Scalar, LinalgError> {
        if !self.has_canonical_map_to(target) {
            return Err(LinalgError::NoRingMap(*self, target));
        }
        Ok(target.reduce(a.clone()))
    }

    pub fn short_name(&self) -> String {
        match self {
            GroundRing::Rationals => "QQ".into(),
            GroundRing::Integers => "ZZ".into(),
            GroundRing::PrimeField(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for GroundRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short_name())
    }
}

pub(crate) fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    assert!(e.gcd.is_one(), "not invertible modulo p");
    e.x.mod_floor(p)
}

/// Renders a scalar compactly (`3`, `-1/2`).
pub fn fmt_scalar(a: &Scalar) -> String {
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}
