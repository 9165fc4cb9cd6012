//! State vectors as a permutation-symmetric reference plus an exact relative
//! phase. The exchange operator moves whole state descriptions between
//! positions of a ranking scheme and recomputes every winding.

mod annotated;
mod clebsch;
mod particle;
mod state;

use thiserror::Error;

pub use annotated::{annotate, exchange, pauli_check, AnnotatedState, Description, ExchangeReport};
pub use clebsch::{exchange_symmetry, highest_weight_state, odd_s_exclusion, SignedSqrt, MAX_TWICE_SPIN};
pub use particle::{FrameKind, Kinematics, ParticleId, ParticleState};
pub use state::{build_symmetric, CanonicalChoice, Member, SymmetricState};

use crate::exactphase::{HalfInt, HalfIntError};
use crate::geometry::GeometryError;
use crate::ranking::RankingError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Ranking(#[from] RankingError),
    #[error(transparent)]
    Spin(#[from] HalfIntError),
    #[error("need at least 2 particles, got {0}")]
    TooFewParticles(usize),
    #[error("all particles must use the same kind of kinematics (momenta or angles)")]
    MixedKinematics,
    #[error("polar angle {theta} leaves the azimuth undefined")]
    PolarDegenerate { theta: f64 },
    #[error("no particle with identity {0}")]
    UnknownIdentity(usize),
    #[error("cannot exchange particle {0} with itself")]
    SameParticle(usize),
    #[error("scheme has {scheme} entries for {particles} particles")]
    SchemeSize { scheme: usize, particles: usize },
    #[error("no phase relation from the {from:?} frame to the canonical frame")]
    FrameFamily { from: FrameKind },
    #[error("spin {0} exceeds the supported range (2s ≤ {max})", max = MAX_TWICE_SPIN)]
    SpinTooLarge(HalfInt),
}
