use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::tolerance::Tolerances;

/// An angle measured in full turns.
///
/// The exact part, when present, is authoritative for every comparison.
/// `approx` always holds a float reading of the same angle; for snapped
/// angles it keeps the raw measured value so that floating cross-checks do
/// not inherit snapping error.
#[derive(Clone, Copy, Debug)]
pub struct TurnAngle {
    exact: Option<Rational>,
    approx: f64,
}

impl TurnAngle {
    pub fn from_turns(turns: Rational) -> Self {
        Self { exact: Some(turns), approx: ratio_to_f64(turns) }
    }

    pub fn from_int_turns(turns: i64) -> Self {
        Self::from_turns(Rational::from_integer(turns))
    }

    pub fn zero() -> Self {
        Self::from_int_turns(0)
    }

    pub fn half_turn() -> Self {
        Self::from_turns(Rational::new(1, 2))
    }

    /// A floating angle that is never promoted to an exact value.
    pub fn inexact_radians(radians: f64) -> Self {
        Self { exact: None, approx: radians / TAU }
    }

    /// Reads a floating angle, snapping it onto the nearest rational fraction of
    /// a turn with denominator at most `tol.snap_max_denominator` when that
    /// rational lies within `tol.geometric` radians.
    pub fn from_radians(radians: f64, tol: &Tolerances) -> Self {
        let turns = radians / TAU;
        let exact = best_rational(turns, tol.snap_max_denominator)
            .filter(|r| (ratio_to_f64(*r) - turns).abs() * TAU < tol.geometric);
        Self { exact, approx: turns }
    }

    pub fn exact(&self) -> Option<Rational> {
        self.exact
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn turns(&self) -> f64 {
        self.approx
    }

    pub fn radians(&self) -> f64 {
        self.approx * TAU
    }

    /// Number of whole turns below the angle (`floor`).
    pub fn winding(&self) -> i64 {
        match self.exact {
            Some(r) => r.floor().to_integer(),
            None => self.approx.floor() as i64,
        }
    }

    /// Representative in `[0, 1)` turn.
    pub fn normalized(&self) -> Self {
        match self.exact {
            Some(r) => {
                let shift = r.floor();
                Self { exact: Some(r - shift), approx: self.approx - ratio_to_f64(shift) }
            }
            None => Self { exact: None, approx: self.approx.rem_euclid(1.0) },
        }
    }

    pub fn plus_turns(self, n: i64) -> Self {
        self + Self::from_int_turns(n)
    }

    /// Ordering that is only reported when it can be certified: always for
    /// two exact angles, and for inexact ones only when they differ by more
    /// than `tol` radians.
    pub fn cmp_certified(&self, other: &Self, tol: f64) -> Option<Ordering> {
        match (self.exact, other.exact) {
            (Some(a), Some(b)) => Some(a.cmp(&b)),
            _ => {
                let diff = self.approx - other.approx;
                if diff.abs() * TAU < tol {
                    None
                } else if diff < 0.0 {
                    Some(Ordering::Less)
                } else {
                    Some(Ordering::Greater)
                }
            }
        }
    }
}

/// Exact angles compare by their exact value; otherwise both parts must match.
impl PartialEq for TurnAngle {
    fn eq(&self, other: &Self) -> bool {
        match (self.exact, other.exact) {
            (Some(a), Some(b)) => a == b,
            (None, None) => self.approx == other.approx,
            _ => false,
        }
    }
}

fn ratio_to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// by continued fractions (convergents and the final semiconvergent).
pub fn best_rational(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() || max_den < 1 || x.abs() > 1e15 {
        return None;
    }
    let whole = x.floor();
    let frac = x - whole;
    let whole = whole as i64;

    // h/k convergents, seeded with h_{-2}/k_{-2} = 0/1 and h_{-1}/k_{-1} = 1/0.
    let (mut h0, mut k0, mut h1, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = frac;
    let mut first = true;
    loop {
        let a = if first { 0 } else { v.floor() as i64 };
        if !first && (v.floor() > 1e12) {
            break;
        }
        let k2 = a.saturating_mul(k1).saturating_add(k0);
        if k2 > max_den {
            let t = (max_den - k0) / k1;
            let (hs, ks) = (t * h1 + h0, t * k1 + k0);
            let conv = h1 as f64 / k1 as f64;
            let semi = hs as f64 / ks as f64;
            if ks > 0 && (semi - frac).abs() < (conv - frac).abs() {
                h1 = hs;
                k1 = ks;
            }
            break;
        }
        let h2 = a * h1 + h0;
        h0 = h1;
        k0 = k1;
        h1 = h2;
        k1 = k2;
        let rem = if first { frac } else { v - a as f64 };
        first = false;
        if rem.abs() < 1e-300 || (h1 as f64 / k1 as f64 - frac).abs() < f64::EPSILON {
            break;
        }
        v = 1.0 / rem;
    }
    Some(Rational::new(h1, k1) + Rational::from_integer(whole))
}

impl Add for TurnAngle {
    type Output = TurnAngle;
    fn add(self, rhs: TurnAngle) -> TurnAngle {
        let exact = match (self.exact, rhs.exact) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        TurnAngle { exact, approx: self.approx + rhs.approx }
    }
}

impl Sub for TurnAngle {
    type Output = TurnAngle;
    fn sub(self, rhs: TurnAngle) -> TurnAngle {
        self + (-rhs)
    }
}

impl Neg for TurnAngle {
    type Output = TurnAngle;
    fn neg(self) -> TurnAngle {
        TurnAngle { exact: self.exact.map(|r| -r), approx: -self.approx }
    }
}

impl fmt::Display for TurnAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(r) => f.write_str(&format_rational(r)),
            None => write!(f, "~{:.12}", self.approx),
        }
    }
}

impl Serialize for TurnAngle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.exact {
            Some(_) => serializer.collect_str(self),
            None => serializer.serialize_f64(self.approx),
        }
    }
}

impl<'de> Deserialize<'de> for TurnAngle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Float(f64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(t) => parse_rational(&t).map(TurnAngle::from_turns).map_err(serde::de::Error::custom),
            Repr::Float(x) => Ok(TurnAngle { exact: None, approx: x }),
        }
    }
}

/// Parses `"p/q"` or an integer.
pub(crate) fn parse_rational(text: &str) -> Result<Rational, String> {
    let t = text.trim();
    let bad = || format!("cannot parse `{text}` as a rational number");
    let r = match t.split_once('/') {
        None => Rational::from_integer(t.parse().map_err(|_| bad())?),
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(format!("zero denominator in `{text}`"));
            }
            Rational::new(n, d)
        }
    };
    Ok(r)
}

pub(crate) fn format_rational(r: Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
