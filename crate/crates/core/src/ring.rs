//! Coefficient rings.
//!
//! Every coefficient in the crate is stored as a [`Scalar`] (an arbitrary
//! precision rational). The [`CoefficientRing`] decides which scalars are
//! legal and how arithmetic results are normalized: integers carry
//! denominator one, residues modulo `m` are kept in `[0, m)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Ring element representation shared by every coefficient ring.
pub type Scalar = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    /// `Z/m` with `m >= 2`. Build through [`CoefficientRing::integers_mod`].
    IntegersMod(u64),
}

impl CoefficientRing {
    pub const Z2: CoefficientRing = CoefficientRing::IntegersMod(2);

    pub fn integers_mod(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(CoefficientRing::IntegersMod(m))
    }

    pub fn is_field(&self) -> bool {
        match *self {
            CoefficientRing::Integers => false,
            CoefficientRing::Rationals => true,
            CoefficientRing::IntegersMod(m) => is_prime(m),
        }
    }

    /// Characteristic of the ring (0 for `Z` and `Q`).
    pub fn characteristic(&self) -> u64 {
        match *self {
            CoefficientRing::IntegersMod(m) => m,
            _ => 0,
        }
    }

    /// True when `-1 = 1`, so that sign conventions are invisible.
    pub fn is_char_two(&self) -> bool {
        self.characteristic() == 2
    }

    /// The prime `p` when this is a finite field `Z/p`.
    pub fn finite_field_order(&self) -> Option<u64> {
        match *self {
            CoefficientRing::IntegersMod(m) if is_prime(m) => Some(m),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        self.reduce(Scalar::one())
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(v)))
    }

    /// Checks that `v` is an element of the ring and returns its canonical form.
    pub fn element(&self, v: Scalar) -> Result<Scalar> {
        match *self {
            CoefficientRing::Integers if !v.is_integer() => {
                Err(Error::NotInRing(v.to_string(), *self))
            }
            CoefficientRing::IntegersMod(m) if !v.is_integer() => {
                let den = v.denom().mod_floor(&BigInt::from(m));
                match inverse_mod(&den, m) {
                    Some(inv) => Ok(self.reduce(Scalar::from_integer(v.numer() * inv))),
                    None => Err(Error::NotInRing(v.to_string(), *self)),
                }
            }
            _ => Ok(self.reduce(v)),
        }
    }

    /// Canonical representative of a value already known to lie in the ring.
    pub fn reduce(&self, v: Scalar) -> Scalar {
        match *self {
            CoefficientRing::IntegersMod(m) => {
                debug_assert!(v.is_integer());
                Scalar::from_integer(v.to_integer().mod_floor(&BigInt::from(m)))
            }
            _ => v,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        self.reduce(a.clone()).is_zero()
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        self.inv(a).is_some()
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match *self {
            CoefficientRing::Rationals => Some(a.recip()),
            CoefficientRing::Integers => {
                if a.is_integer() && a.abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            CoefficientRing::IntegersMod(m) => {
                inverse_mod(&a.to_integer(), m).map(Scalar::from_integer)
            }
        }
    }

    /// `a / b`, defined when `b` is a unit.
    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        let inv = self
            .inv(b)
            .ok_or_else(|| Error::NonUnit(b.to_string(), *self))?;
        Ok(self.mul(a, &inv))
    }

    /// All elements of a finite ring in increasing order `0, 1, ..., m-1`.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            CoefficientRing::IntegersMod(m) => Some(
                (0..m)
                    .map(|v| Scalar::from_integer(BigInt::from(v)))
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Sign `(-1)^parity` as a ring element.
    pub fn sign(&self, odd: bool) -> Scalar {
        if odd {
            self.neg(&self.one())
        } else {
            self.one()
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::IntegersMod(m) => write!(f, "Z{m}"),
        }
    }
}

impl std::str::FromStr for CoefficientRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" => Ok(CoefficientRing::Integers),
            "Q" => Ok(CoefficientRing::Rationals),
            _ => {
                let m = s
                    .strip_prefix('Z')
                    .and_then(|rest| rest.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown ring `{s}`")))?;
                CoefficientRing::integers_mod(m)
            }
        }
    }
}

impl Serialize for CoefficientRing {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn inverse_mod(a: &BigInt, m: u64) -> Option<BigInt> {
    let m = BigInt::from(m);
    let a = a.mod_floor(&m);
    let ext = a.extended_gcd(&m);
    if ext.gcd.is_one() {
        Some(ext.x.mod_floor(&m))
    } else {
        None
    }
}

/// Formats a scalar the way the text format writes coefficients.
pub fn format_scalar(v: &Scalar) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Small-integer view of a scalar, used by the modular fast paths.
pub(crate) fn scalar_to_u64_mod(v: &Scalar, m: u64) -> u64 {
    v.to_integer()
        .mod_floor(&BigInt::from(m))
        .to_u64()
        .expect("residue fits in u64")
}
