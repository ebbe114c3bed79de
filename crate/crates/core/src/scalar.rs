//! Exact elements of Q/Z, standing in for roots of unity exp(2πi·r).

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// A rational `num/den` with `0 <= num < den`, reduced. The group law is
/// addition mod 1, i.e. multiplication of the corresponding roots of unity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitScalar {
    num: u64,
    den: u64,
}

impl UnitScalar {
    pub const ZERO: UnitScalar = UnitScalar { num: 0, den: 1 };

    /// `num/den` reduced mod 1. Panics if `den == 0`.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let r = num.rem_euclid(den as i64) as u64;
        let g = gcd(r, den);
        UnitScalar { num: r / g, den: den / g }
    }

    /// The scalar `residue / modulus`.
    pub fn from_residue(residue: u64, modulus: u64) -> Self {
        assert!(modulus > 0, "zero modulus");
        let r = residue % modulus;
        let g = gcd(r, modulus);
        UnitScalar { num: r / g, den: modulus / g }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Residue `r` with `self == r/modulus`, if the denominator divides `modulus`.
    pub fn residue(&self, modulus: u64) -> Option<u64> {
        modulus.is_multiple_of(self.den).then(|| self.num * (modulus / self.den))
    }

    /// Integer multiple `n·self`.
    pub fn times(&self, n: i64) -> Self {
        let r = (self.num as i128 * n as i128).rem_euclid(self.den as i128);
        UnitScalar::new(r as i64, self.den)
    }
}

impl Default for UnitScalar {
    fn default() -> Self {
        UnitScalar::ZERO
    }
}

impl Add for UnitScalar {
    type Output = UnitScalar;
    fn add(self, rhs: UnitScalar) -> UnitScalar {
        let den = lcm(self.den, rhs.den);
        let a = self.num as u128 * (den / self.den) as u128;
        let b = rhs.num as u128 * (den / rhs.den) as u128;
        UnitScalar::from_residue(((a + b) % den as u128) as u64, den)
    }
}

impl Neg for UnitScalar {
    type Output = UnitScalar;
    fn neg(self) -> UnitScalar {
        if self.num == 0 {
            self
        } else {
            UnitScalar { num: self.den - self.num, den: self.den }
        }
    }
}

impl Sub for UnitScalar {
    type Output = UnitScalar;
    fn sub(self, rhs: UnitScalar) -> UnitScalar {
        self + (-rhs)
    }
}

impl AddAssign for UnitScalar {
    fn add_assign(&mut self, rhs: UnitScalar) {
        *self = *self + rhs;
    }
}

impl SubAssign for UnitScalar {
    fn sub_assign(&mut self, rhs: UnitScalar) {
        *self = *self - rhs;
    }
}

impl std::iter::Sum for UnitScalar {
    fn sum<I: Iterator<Item = UnitScalar>>(iter: I) -> Self {
        iter.fold(UnitScalar::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for UnitScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for UnitScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for UnitScalar {
    type Err = Error;

    /// Accepts `"p/q"` or an integer `"p"`; negative numerators wrap mod 1.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational scalar: {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: u64 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(UnitScalar::new(p, q))
            }
            None => {
                let p: i64 = s.parse().map_err(|_| bad())?;
                Ok(UnitScalar::new(p, 1))
            }
        }
    }
}

impl Serialize for UnitScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for UnitScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
