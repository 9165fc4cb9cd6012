//! Exact half-integers, turn angles and phases.
//!
//! Every phase that appears in an exchange calculation is a rational number
//! of half-turns, `e^{iπ·r}`. Only phases built from floating azimuths carry
//! an inexact remainder.

mod angle;
mod halfint;
mod phase;

pub use angle::{best_rational, TurnAngle};
pub use halfint::{HalfInt, HalfIntError};
pub use phase::{canonical_rotation_phase, compose, winding_phase, Phase, PhaseEquality};

/// Exact rational used for turns and half-turns.
pub type Rational = num_rational::Rational64;

pub(crate) fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&angle::format_rational(*r))
}

pub(crate) use angle::{format_rational, parse_rational};
