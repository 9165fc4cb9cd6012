use std::f64::consts::{PI, TAU};

use serde::Serialize;

use super::{FrameKind, Kinematics, ParticleId, ParticleState, StateError};
use crate::exactphase::{canonical_rotation_phase, Phase, Rational, TurnAngle};
use crate::geometry::{aggregate_frame, canonical_geometry, helicity_frame, CanonicalAngles, CanonicalGeometry, Vec3};
use crate::ranking::Rank0Azimuths;
use crate::tolerance::Tolerances;

/// How the canonical frame's x axis is fixed.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct CanonicalChoice {
    /// Vector projected onto the plane transverse to the aggregate axis.
    /// `None` uses lab X, falling back to lab Y.
    pub reference: Option<Vec3>,
    /// Extra rotation about the aggregate axis, in turns.
    #[serde(serialize_with = "crate::exactphase::serialize_rational")]
    pub rotation_turns: Rational,
}

/// One particle in a symmetric state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Member {
    pub identity: ParticleId,
    pub label: String,
    pub state: ParticleState,
    pub angles: CanonicalAngles,
}

/// Permutation-symmetric reference state `α Σ_π |ψ_π(1)⟩…|ψ_π(N)⟩`.
///
/// Two symmetric states are equal when their members agree as multisets of
/// descriptions; identities, labels and member order are ignored.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetricState {
    members: Vec<Member>,
    frame: FrameKind,
    norm_alpha: f64,
    geometry: Option<CanonicalGeometry>,
    #[serde(skip)]
    tolerances: Tolerances,
}

/// Builds the symmetric state of labelled particles, all quantized in `frame`.
pub fn build_symmetric(
    particles: Vec<(String, ParticleState)>,
    frame: FrameKind,
    choice: &CanonicalChoice,
    tol: &Tolerances,
) -> Result<SymmetricState, StateError> {
    let n = particles.len();
    if n < 2 {
        return Err(StateError::TooFewParticles(n));
    }
    let momentum_mode = particles[0].1.p.is_momentum();
    if particles.iter().any(|(_, p)| p.p.is_momentum() != momentum_mode) {
        return Err(StateError::MixedKinematics);
    }

    let (angles, geometry) = if momentum_mode {
        let momenta: Vec<Vec3> = particles
            .iter()
            .map(|(_, p)| match p.p {
                Kinematics::Momentum(v) => v,
                Kinematics::Angles { .. } => unreachable!(),
            })
            .collect();
        let rotation = *choice.rotation_turns.numer() as f64 / *choice.rotation_turns.denom() as f64 * TAU;
        let geo = canonical_geometry(&momenta, choice.reference, rotation, tol)?;
        for p in &momenta {
            match frame {
                FrameKind::Helicity => {
                    helicity_frame(p, &geo.axis, tol)?;
                }
                FrameKind::Aggregate => {
                    aggregate_frame(p, &geo.axis, tol)?;
                }
                FrameKind::Canonical => {}
            }
        }
        (geo.angles.clone(), Some(geo))
    } else {
        let angles = particles
            .iter()
            .map(|(_, p)| match p.p {
                Kinematics::Angles { theta, phi_turns } => {
                    if !theta.is_finite() || theta.sin() <= tol.geometric || !(0.0..=PI).contains(&theta) {
                        return Err(StateError::PolarDegenerate { theta });
                    }
                    let phi = TurnAngle::from_turns(phi_turns - choice.rotation_turns).normalized();
                    Ok(CanonicalAngles { theta, phi })
                }
                Kinematics::Momentum(_) => unreachable!(),
            })
            .collect::<Result<Vec<_>, _>>()?;
        (angles, None)
    };

    let members = particles
        .into_iter()
        .zip(angles)
        .enumerate()
        .map(|(i, ((label, state), angles))| Member { identity: ParticleId(i), label, state, angles })
        .collect();
    let norm_alpha = 1.0 / (1..=n).map(|k| k as f64).product::<f64>().sqrt();
    Ok(SymmetricState { members, frame, norm_alpha, geometry, tolerances: *tol })
}

impl SymmetricState {
    /// Members in identity order.
    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn frame(&self) -> FrameKind {
        self.frame
    }

    /// `1/√N!`, exact for distinct descriptions.
    pub fn norm_alpha(&self) -> f64 {
        self.norm_alpha
    }

    /// Canonical-frame geometry; `None` when built from angles.
    pub fn geometry(&self) -> Option<&CanonicalGeometry> {
        self.geometry.as_ref()
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tolerances
    }

    pub fn member(&self, id: ParticleId) -> Result<&Member, StateError> {
        self.members.get(id.0).ok_or(StateError::UnknownIdentity(id.0))
    }

    pub fn find_label(&self, label: &str) -> Option<ParticleId> {
        self.members.iter().find(|m| m.label == label).map(|m| m.identity)
    }

    /// Rank-0 azimuths in identity order.
    pub fn phi0(&self) -> Rank0Azimuths {
        Rank0Azimuths::new(self.members.iter().map(|m| m.angles.phi).collect())
            .with_tie_tolerance(self.tolerances.geometric)
    }

    /// Re-expresses the state in the canonical frame. Returns the new state
    /// and the phase `Π_i e^{i m_i φ_i}` it picks up; only defined from the
    /// aggregate frame, which differs from the canonical one by a rotation
    /// about each momentum.
    pub fn to_canonical(&self) -> Result<(SymmetricState, Phase), StateError> {
        match self.frame {
            FrameKind::Canonical => Ok((self.clone(), Phase::one())),
            FrameKind::Helicity => Err(StateError::FrameFamily { from: FrameKind::Helicity }),
            FrameKind::Aggregate => {
                let phase = self.members.iter().map(|m| canonical_rotation_phase(m.state.m, &m.angles.phi)).product();
                let mut out = self.clone();
                out.frame = FrameKind::Canonical;
                for m in &mut out.members {
                    m.state.frame = FrameKind::Canonical;
                }
                Ok((out, phase))
            }
        }
    }

    /// The same state with the canonical x axis turned by `turns` about the
    /// aggregate axis: every azimuth decreases by `turns`.
    pub fn rotated_canonical(&self, turns: Rational) -> SymmetricState {
        let mut out = self.clone();
        let shift = TurnAngle::from_turns(turns);
        for m in &mut out.members {
            m.angles.phi = (m.angles.phi - shift).normalized();
        }
        if let Some(g) = &mut out.geometry {
            g.frame = g.frame.rotated_about_z(*turns.numer() as f64 / *turns.denom() as f64 * TAU);
        }
        out
    }

    fn sorted_descriptions(&self) -> Vec<&ParticleState> {
        let mut v: Vec<&ParticleState> = self.members.iter().map(|m| &m.state).collect();
        v.sort_by(|a, b| a.canonical_cmp(b));
        v
    }
}

impl PartialEq for SymmetricState {
    fn eq(&self, other: &Self) -> bool {
        self.frame == other.frame
            && self.len() == other.len()
            && self.sorted_descriptions().iter().zip(other.sorted_descriptions()).all(|(a, b)| a.same_description(b))
    }
}
