//! Small arithmetic vocabulary shared by every module: signs, the
//! `epsilon` convention, the three presentation regimes, and JSON helpers
//! for big integers.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A sign `+1` or `-1`. Used for `omega`, `Delta` and `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.to_i64())
    }

    /// Sign of a nonzero integer; `None` for zero.
    pub fn of(n: &BigInt) -> Option<Sign> {
        if n.is_zero() {
            None
        } else if n.is_positive() {
            Some(Sign::Plus)
        } else {
            Some(Sign::Minus)
        }
    }

    /// `Some` when `n` is exactly `+1` or `-1`.
    pub fn from_unit(n: &BigInt) -> Option<Sign> {
        if n.is_one() {
            Some(Sign::Plus)
        } else if *n == -BigInt::one() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn apply(self, n: BigInt) -> BigInt {
        match self {
            Sign::Plus => n,
            Sign::Minus => -n,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.to_i64() as i8)
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match i64::deserialize(d)? {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(serde::de::Error::custom(format!(
                "expected +1 or -1, got {other}"
            ))),
        }
    }
}

/// `epsilon = -1` iff `p = 3`. Every formula with an `epsilon` goes
/// through here.
pub fn epsilon(p: u32) -> Sign {
    if p == 3 {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

/// Which presentation of the Goeritz group applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `p = 2`: generators beta, rho, gamma.
    Two,
    /// `p = 3`: generators alpha, beta, gamma, delta.
    Three,
    /// `p >= 4`: generators alpha, beta, gamma, sigma.
    Large,
}

impl Regime {
    pub fn of(p: u32) -> Result<Regime> {
        match p {
            0 | 1 => Err(Error::InvalidP(p)),
            2 => Ok(Regime::Two),
            3 => Ok(Regime::Three),
            _ => Ok(Regime::Large),
        }
    }
}

pub fn check_p(p: u32) -> Result<()> {
    Regime::of(p).map(|_| ())
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// `gcd` with the convention `gcd(0, 0) = 0`, always nonnegative.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::gcd(a, b)
}

/// Exact quotient when `den` divides `num`.
pub fn exact_div(num: &BigInt, den: &BigInt) -> Option<BigInt> {
    if den.is_zero() {
        return None;
    }
    let (q, r) = num_integer::Integer::div_rem(num, den);
    r.is_zero().then_some(q)
}

/// Serde adapter writing a `BigInt` as a JSON number when it fits in an
/// `i64`, and as a decimal string otherwise.
pub mod serde_bigint {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        match n.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&n.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Uint(u64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(BigInt::from(v)),
            Repr::Uint(v) => Ok(BigInt::from(v)),
            Repr::Str(s) => s.trim().parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Wrapper that serializes through [`serde_bigint`]; handy inside arrays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JsonInt(#[serde(with = "serde_bigint")] pub BigInt);
