use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HalfIntError {
    #[error("cannot parse `{0}` as an integer or half-integer")]
    Parse(String),
    #[error("spin must be non-negative, got {0}")]
    NegativeSpin(HalfInt),
    #[error("projection m = {m} out of range for s = {s}")]
    ProjectionOutOfRange { s: HalfInt, m: HalfInt },
    #[error("s = {s} and m = {m} do not differ by an integer")]
    ParityMismatch { s: HalfInt, m: HalfInt },
}

/// An integer or half-odd-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(v: i64) -> Self {
        HalfInt(2 * v)
    }

    /// The stored value `2v`.
    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Fermionic spin (half-odd-integer).
    pub const fn is_half_odd(self) -> bool {
        self.0 % 2 != 0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// `(-1)^{2v}`.
    pub const fn sign_of_twice(self) -> i8 {
        if self.0 % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Checks that `(s, m)` is an admissible spin/projection pair.
    pub fn check_pair(s: HalfInt, m: HalfInt) -> Result<(), HalfIntError> {
        if s.0 < 0 {
            return Err(HalfIntError::NegativeSpin(s));
        }
        if m.0.abs() > s.0 {
            return Err(HalfIntError::ProjectionOutOfRange { s, m });
        }
        if (s.0 - m.0) % 2 != 0 {
            return Err(HalfIntError::ParityMismatch { s, m });
        }
        Ok(())
    }

    /// All projections `-s, -s+1, ..., s`.
    pub fn projections(self) -> impl Iterator<Item = HalfInt> {
        let s = self.0;
        (0..=s.max(-1)).map(move |k| HalfInt(-s + 2 * k)).filter(move |_| s >= 0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = HalfIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || HalfIntError::Parse(s.to_string());
        match t.split_once('/') {
            None => t.parse::<i64>().map(HalfInt::from_int).map_err(|_| err()),
            Some((num, den)) => {
                let num: i64 = num.trim().parse().map_err(|_| err())?;
                match den.trim() {
                    "1" => Ok(HalfInt::from_int(num)),
                    "2" => Ok(HalfInt(num)),
                    _ => Err(err()),
                }
            }
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}
