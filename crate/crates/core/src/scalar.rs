//! Exact arithmetic over a prime field `F_p` or the rationals.
//!
//! Every other module works with [`Scalar`] values tagged by their field. Mixing
//! scalars of different fields is reported by the `checked_*` methods; the
//! operator impls panic instead, since inside an algorithm all scalars come from
//! one complex and a mismatch is a bug.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("cannot parse {0:?} as a field")]
    BadField(String),
    #[error("cannot parse {text:?} as a scalar of {field}")]
    BadScalar { text: String, field: FieldSpec },
}

/// The coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// `F_p`. Fails unless `p` is a prime below 2^31.
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Prime(p) => Scalar::Mod {
                residue: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.into())),
        }
    }

    /// Builds the scalar `num / den`; over `F_p` the denominator is inverted.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match *self {
            FieldSpec::Prime(p) => {
                let modp = |x: &BigInt| -> i64 {
                    let r = x % BigInt::from(p);
                    let r: i64 = r.try_into().expect("residue fits");
                    r
                };
                let n = self.from_i64(modp(num));
                let d = self.from_i64(modp(den));
                n.checked_div(&d)
            }
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
        }
    }

    /// Parses a scalar in this field's text syntax: an integer, or `a/b`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, ScalarError> {
        let bad = || ScalarError::BadScalar {
            text: text.to_string(),
            field: *self,
        };
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n, d),
            None => (t, "1"),
        };
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        self.from_fraction(&num, &den).map_err(|e| match e {
            ScalarError::DivisionByZero => bad(),
            e => e,
        })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let p: u64 = s
            .strip_prefix('F')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| ScalarError::BadField(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

/// An element of a [`FieldSpec`], always in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod { residue: u32, modulus: u32 },
    Rational(BigRational),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Mod { modulus, .. } => FieldSpec::Prime(*modulus),
            Scalar::Rational(_) => FieldSpec::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { residue, .. } => *residue == 0,
            Scalar::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { residue, .. } => *residue == 1,
            Scalar::Rational(r) => r.is_one(),
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Mod { residue: a, modulus }, Scalar::Mod { residue: b, .. }) => Scalar::Mod {
                residue: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Mod { residue: a, modulus }, Scalar::Mod { residue: b, .. }) => Scalar::Mod {
                residue: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Mod { residue, modulus } => Scalar::Mod {
                residue: (*modulus - *residue) % *modulus,
                modulus: *modulus,
            },
            Scalar::Rational(r) => Scalar::Rational(-r),
        }
    }

    /// Multiplicative inverse.
    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Mod { residue, modulus } => {
                // Fermat: a^(p-2)
                let p = *modulus as u64;
                let mut base = *residue as u64;
                let mut exp = p - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Scalar::Mod {
                    residue: acc as u32,
                    modulus: *modulus,
                }
            }
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { residue, .. } => write!(f, "{residue}"),
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}
