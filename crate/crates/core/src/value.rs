//! Exact critical values.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {0:?} as a value (expected an integer, a decimal or a fraction a/b)")]
pub struct ValueParseError(pub String);

/// A critical value. Exact rational; prints as `n` or `n/d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Value(pub BigRational);

impl Value {
    pub fn from_i64(n: i64) -> Self {
        Value(BigRational::from_integer(n.into()))
    }

    pub fn new(num: i64, den: i64) -> Self {
        Value(BigRational::new(num.into(), den.into()))
    }

    pub fn midpoint(&self, other: &Value) -> Value {
        Value((&self.0 + &other.0) / BigRational::from_integer(2.into()))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Lossy conversion, for rendering only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(0.0)
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::from_i64(n)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Value {
    type Err = ValueParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ValueParseError(s.to_string());
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.parse().map_err(|_| err())?;
            let d: BigInt = d.parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Value(BigRational::new(n, d)));
        }
        if let Some((int, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let negative = int.starts_with('-');
            let int_part: BigInt = match int {
                "" | "-" | "+" => BigInt::zero(),
                _ => int.parse().map_err(|_| err())?,
            };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let frac_part: BigInt = frac.parse().map_err(|_| err())?;
            let mut num = int_part.abs() * &scale + frac_part;
            if negative {
                num = -num;
            }
            return Ok(Value(BigRational::new(num, scale)));
        }
        let n: BigInt = t.parse().map_err(|_| err())?;
        Ok(Value(BigRational::from_integer(n)))
    }
}
