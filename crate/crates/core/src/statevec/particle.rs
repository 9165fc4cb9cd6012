use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::StateError;
use crate::exactphase::{HalfInt, Rational};
use crate::geometry::Vec3;

/// Which quantization frame a particle's `m` refers to. In the helicity
/// frame `m` plays the role of the helicity `λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum FrameKind {
    Helicity,
    #[default]
    Aggregate,
    Canonical,
}

/// Immutable particle identity (creation order). Survives exchanges as a
/// label on the particle's description.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ParticleId(pub usize);

/// Either a laboratory momentum, or polar angle and exact azimuth (in turns)
/// measured directly in the canonical frame.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kinematics {
    Momentum(Vec3),
    Angles {
        theta: f64,
        #[serde(serialize_with = "crate::exactphase::serialize_rational")]
        phi_turns: Rational,
    },
}

impl Kinematics {
    fn order_key(&self) -> (u8, [u64; 3], Rational) {
        match *self {
            Kinematics::Momentum(p) => (0, [p.x.to_bits(), p.y.to_bits(), p.z.to_bits()], Rational::from_integer(0)),
            Kinematics::Angles { theta, phi_turns } => (1, [theta.to_bits(), 0, 0], phi_turns),
        }
    }

    pub fn is_momentum(&self) -> bool {
        matches!(self, Kinematics::Momentum(_))
    }
}

/// One particle's state description: non-kinematic label `Q`, kinematics,
/// spin `s` and projection `m`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParticleState {
    #[serde(rename = "Q")]
    pub q: String,
    pub p: Kinematics,
    pub s: HalfInt,
    pub m: HalfInt,
    pub frame: FrameKind,
}

impl ParticleState {
    pub fn new(
        q: impl Into<String>,
        p: Kinematics,
        s: HalfInt,
        m: HalfInt,
        frame: FrameKind,
    ) -> Result<Self, StateError> {
        HalfInt::check_pair(s, m)?;
        Ok(Self { q: q.into(), p, s, m, frame })
    }

    pub fn is_fermion(&self) -> bool {
        self.s.is_half_odd()
    }

    /// Same `(Q, p, s, m)`: the two descriptions are interchangeable.
    pub fn same_description(&self, other: &ParticleState) -> bool {
        self.q == other.q
            && self.p.order_key() == other.p.order_key()
            && self.s == other.s
            && self.m == other.m
            && self.frame == other.frame
    }

    /// Total order used to put multisets of descriptions in canonical form.
    pub(crate) fn canonical_cmp(&self, other: &ParticleState) -> Ordering {
        self.q
            .cmp(&other.q)
            .then(self.s.cmp(&other.s))
            .then(self.m.cmp(&other.m))
            .then(self.frame.cmp(&other.frame))
            .then(self.p.order_key().cmp(&other.p.order_key()))
    }
}
