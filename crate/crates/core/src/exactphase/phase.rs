use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::Mul;

use num_traits::{ToPrimitive, Zero};

use super::angle::format_rational;
use super::{HalfInt, Rational, TurnAngle};

/// A unit-modulus phase `e^{iπ·h} · e^{iδ}` with `h` an exact rational number
/// of half-turns and `δ` an inexact remainder in radians.
///
/// `h` is kept reduced to `[0, 2)` and `δ` to `[0, 2π)`.
#[derive(Clone, Copy, Debug)]
pub struct Phase {
    half_turns: Rational,
    inexact: f64,
}

/// Outcome of comparing two phases. Anything involving an inexact part is
/// reported as approximate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseEquality {
    Exact(bool),
    Approximate(bool),
}

impl PhaseEquality {
    pub fn holds(self) -> bool {
        matches!(self, PhaseEquality::Exact(true) | PhaseEquality::Approximate(true))
    }
}

fn reduce_half_turns(h: Rational) -> Rational {
    let two = Rational::from_integer(2);
    let q = (h / two).floor();
    h - q * two
}

impl Phase {
    pub fn one() -> Self {
        Self::from_half_turns(Rational::zero())
    }

    pub fn minus_one() -> Self {
        Self::from_half_turns(Rational::from_integer(1))
    }

    /// `(-1)^n`.
    pub fn sign_power(n: i64) -> Self {
        Self::from_half_turns(Rational::from_integer(n))
    }

    pub fn from_half_turns(h: Rational) -> Self {
        Self { half_turns: reduce_half_turns(h), inexact: 0.0 }
    }

    pub fn from_radians_inexact(radians: f64) -> Self {
        Self { half_turns: Rational::zero(), inexact: radians.rem_euclid(TAU) }
    }

    pub fn half_turns(&self) -> Rational {
        self.half_turns
    }

    pub fn inexact_part(&self) -> f64 {
        self.inexact
    }

    pub fn is_exact(&self) -> bool {
        self.inexact == 0.0
    }

    /// `Some(±1)` when the phase is exactly a sign.
    pub fn sign(&self) -> Option<i8> {
        if !self.is_exact() || !self.half_turns.is_integer() {
            return None;
        }
        Some(if self.half_turns.is_zero() { 1 } else { -1 })
    }

    pub fn compose(self, other: Phase) -> Phase {
        Phase {
            half_turns: reduce_half_turns(self.half_turns + other.half_turns),
            inexact: (self.inexact + other.inexact).rem_euclid(TAU),
        }
    }

    pub fn inverse(self) -> Phase {
        Phase { half_turns: reduce_half_turns(-self.half_turns), inexact: (-self.inexact).rem_euclid(TAU) }
    }

    /// `self / denominator`.
    pub fn ratio(self, denominator: Phase) -> Phase {
        self.compose(denominator.inverse())
    }

    pub fn radians(&self) -> f64 {
        PI * self.half_turns.to_f64().unwrap_or(f64::NAN) + self.inexact
    }

    /// `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let a = self.radians();
        (a.cos(), a.sin())
    }

    pub fn compare(&self, other: &Phase, tol: f64) -> PhaseEquality {
        if self.is_exact() && other.is_exact() {
            return PhaseEquality::Exact(self.half_turns == other.half_turns);
        }
        let d = (self.radians() - other.radians()).rem_euclid(TAU);
        PhaseEquality::Approximate(d.min(TAU - d) < tol)
    }
}

/// Exact phases compare by value; a phase with an inexact part never equals
/// anything (use [`Phase::compare`]).
impl PartialEq for Phase {
    fn eq(&self, other: &Phase) -> bool {
        self.is_exact() && other.is_exact() && self.half_turns == other.half_turns
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        self.compose(rhs)
    }
}

impl std::iter::Product for Phase {
    fn product<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::one(), Phase::compose)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.sign() {
            return f.write_str(if s > 0 { "+1" } else { "-1" });
        }
        if self.is_exact() {
            return write!(f, "e^{{iπ·{}}}", format_rational(self.half_turns));
        }
        if self.half_turns.is_zero() {
            write!(f, "e^{{i·{:.12}}} (approximate)", self.inexact)
        } else {
            write!(f, "e^{{iπ·{}}}·e^{{i·{:.12}}} (approximate)", format_rational(self.half_turns), self.inexact)
        }
    }
}

impl serde::Serialize for Phase {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("Phase", 4)?;
        st.serialize_field("value", &self.to_string())?;
        st.serialize_field("half_turns", &format_rational(self.half_turns))?;
        st.serialize_field("inexact_radians", &self.inexact)?;
        st.serialize_field("exact", &self.is_exact())?;
        st.end()
    }
}

/// `e^{i 2π m ΔN}`; always exactly `±1` because `2m` is an integer.
pub fn winding_phase(m: HalfInt, delta_winding: i64) -> Phase {
    Phase::sign_power(m.twice() * delta_winding)
}

pub fn compose(a: Phase, b: Phase) -> Phase {
    a.compose(b)
}

/// `e^{i m φ}` for a rotation of the quantization frame by `φ` about its z-axis.
pub fn canonical_rotation_phase(m: HalfInt, phi: &TurnAngle) -> Phase {
    match phi.exact() {
        // m·φ / π = 2m · turns
        Some(turns) => Phase::from_half_turns(turns * m.twice()),
        None => Phase::from_radians_inexact(m.value() * phi.radians()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn winding_phase_examples() {
        assert_eq!(winding_phase(h(1), 1), Phase::minus_one());
        assert_eq!(winding_phase(h(2), 1), Phase::one());
        assert_eq!(winding_phase(h(3), 2), Phase::one());
        assert_eq!(winding_phase(h(-1), 1), Phase::minus_one());
        assert_eq!(winding_phase(h(1), -3), Phase::minus_one());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(Phase::minus_one(), Phase::minus_one()), Phase::one());
        assert_eq!(compose(Phase::one(), Phase::minus_one()), Phase::minus_one());
        // 3-cycle with 2m = (1,1,1), ΔN = (1,0,0)
        let p: Phase = [(1, 1), (1, 0), (1, 0)].into_iter().map(|(tm, dn)| winding_phase(h(tm), dn)).product();
        assert_eq!(p, Phase::minus_one());
    }

    #[test]
    fn canonical_rotation_examples() {
        let full = TurnAngle::from_int_turns(1);
        assert_eq!(canonical_rotation_phase(h(1), &full), Phase::minus_one());
        for tm in -4..=4 {
            assert_eq!(canonical_rotation_phase(h(tm), &TurnAngle::zero()), Phase::one());
        }
        let half = TurnAngle::half_turn();
        let i = canonical_rotation_phase(h(1), &half);
        assert_eq!(i.half_turns(), Rational::new(1, 2));
        assert_eq!(i.sign(), None);
        assert_eq!(i.to_string(), "e^{iπ·1/2}");
        let (re, im) = i.to_complex();
        assert!(re.abs() < 1e-15 && (im - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inexact_phases_never_compare_equal() {
        let a = Phase::from_radians_inexact(0.3);
        assert_ne!(a, a);
        assert_eq!(a.compare(&a, 1e-9), PhaseEquality::Approximate(true));
        assert_eq!(Phase::one().compare(&Phase::minus_one(), 1e-9), PhaseEquality::Exact(false));
        assert!(a.to_string().contains("approximate"));
    }

    #[test]
    fn reduction_keeps_half_turns_in_range() {
        let p = Phase::from_half_turns(Rational::new(-7, 3));
        assert_eq!(p.half_turns(), Rational::new(5, 3));
        assert_eq!(p.compose(p.inverse()), Phase::one());
    }
}
