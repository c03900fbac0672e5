//! Exact reduced rationals extended by a single point at infinity.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced fraction `p/q` with the sign on the numerator.
///
/// `q = 0` is the infinity tangle and is always stored as `1/0`; zero is
/// stored as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Fraction {
    p: BigInt,
    q: BigInt,
}

impl Fraction {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (mut p, mut q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(Error::Parse("0/0 is not a fraction".into()));
        }
        if q.is_zero() {
            return Ok(Self::infinity());
        }
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        let g = p.gcd(&q);
        if !g.is_one() {
            p /= &g;
            q /= &g;
        }
        Ok(Fraction { p, q })
    }

    pub fn integer(k: impl Into<BigInt>) -> Self {
        Fraction {
            p: k.into(),
            q: BigInt::one(),
        }
    }

    /// `1/t`, the vertical tangle with `t` crossings.
    pub fn vertical(t: i64) -> Self {
        Self::new(1, t).expect("1/t is never 0/0")
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn infinity() -> Self {
        Fraction {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.p
    }

    pub fn denom(&self) -> &BigInt {
        &self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    /// Integral tangles `[k]` have denominator 1.
    pub fn is_integral(&self) -> bool {
        self.q.is_one()
    }

    pub fn recip(&self) -> Self {
        if self.is_zero() {
            return Self::infinity();
        }
        if self.is_infinite() {
            return Self::zero();
        }
        Self::new(self.q.clone(), self.p.clone()).expect("nonzero numerator")
    }

    /// The residue `(p mod q)/q` in `[0, 1)`. Infinity has no residue.
    pub fn fract(&self) -> Option<Self> {
        if self.is_infinite() {
            return None;
        }
        let r = self.p.mod_floor(&self.q);
        Some(Fraction {
            p: r,
            q: self.q.clone(),
        })
    }

    /// Vertical tangle `1/t` for some integer `t`, if this is one.
    pub fn vertical_twists(&self) -> Option<BigInt> {
        if self.is_infinite() {
            None
        } else if self.p.is_one() {
            Some(self.q.clone())
        } else if (-&self.p).is_one() {
            Some(-&self.q)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        if self.is_infinite() {
            return f64::INFINITY;
        }
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        p / q
    }
}

impl Add for &Fraction {
    type Output = Fraction;

    /// Infinity absorbs any finite summand; `∞ + ∞` stays `∞`.
    fn add(self, rhs: &Fraction) -> Fraction {
        if self.is_infinite() || rhs.is_infinite() {
            return Fraction::infinity();
        }
        Fraction::new(&self.p * &rhs.q + &rhs.p * &self.q, &self.q * &rhs.q)
            .expect("finite denominators")
    }
}

impl Add for Fraction {
    type Output = Fraction;

    fn add(self, rhs: Fraction) -> Fraction {
        &self + &rhs
    }
}

impl Mul for &Fraction {
    type Output = Fraction;

    /// `0·∞` is taken to be `∞`.
    fn mul(self, rhs: &Fraction) -> Fraction {
        if self.is_infinite() || rhs.is_infinite() {
            return Fraction::infinity();
        }
        Fraction::new(&self.p * &rhs.p, &self.q * &rhs.q).expect("finite denominators")
    }
}

impl Neg for &Fraction {
    type Output = Fraction;

    fn neg(self) -> Fraction {
        if self.is_infinite() {
            return Fraction::infinity();
        }
        Fraction {
            p: -&self.p,
            q: self.q.clone(),
        }
    }
}

impl Neg for Fraction {
    type Output = Fraction;

    fn neg(self) -> Fraction {
        -&self
    }
}

impl Sub for &Fraction {
    type Output = Fraction;

    fn sub(self, rhs: &Fraction) -> Fraction {
        self + &(-rhs)
    }
}

impl std::iter::Sum for Fraction {
    fn sum<I: Iterator<Item = Fraction>>(iter: I) -> Self {
        iter.fold(Fraction::zero(), |acc, f| &acc + &f)
    }
}

impl<'a> std::iter::Sum<&'a Fraction> for Fraction {
    fn sum<I: Iterator<Item = &'a Fraction>>(iter: I) -> Self {
        iter.fold(Fraction::zero(), |acc, f| &acc + f)
    }
}

impl Ord for Fraction {
    /// Numeric order on the rationals with infinity above everything.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.p * &other.q).cmp(&(&other.p * &self.q)),
        }
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Fraction {
    fn from(k: i64) -> Self {
        Fraction::integer(k)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid fraction {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Fraction::new(p, q)
            }
            None => Ok(Fraction::integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
