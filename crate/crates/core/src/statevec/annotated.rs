use serde::Serialize;

use super::{ParticleId, ParticleState, StateError, SymmetricState};
use crate::exactphase::{winding_phase, Phase, TurnAngle};
use crate::ranking::{scheme_windings, Rank0Azimuths, RankingScheme, WindingVector};

/// A particle's full description as it sits in one slot of the ranking
/// scheme. Exchanges move descriptions between slots.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Description {
    pub identity: ParticleId,
    pub label: String,
    pub state: ParticleState,
    pub phi0: TurnAngle,
}

/// Symmetric state together with a ranking scheme and the relative phase
/// `Π e^{i 2π m N}` it implies.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnnotatedState {
    base: SymmetricState,
    slots: Vec<Description>,
    scheme: RankingScheme,
    windings: WindingVector,
    phase: Phase,
    #[serde(skip)]
    tie_tolerance: f64,
}

/// Result of one exchange.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExchangeReport {
    pub pair: (ParticleId, ParticleId),
    /// New phase over old phase.
    pub exchange_phase: Phase,
    /// Winding change per identity.
    pub winding_deltas: WindingVector,
    /// Identities outside the exchanged pair whose winding changed.
    pub third_party_affected: Vec<ParticleId>,
    /// The two descriptions coincide and the exchange phase is −1.
    pub vanishes: bool,
}

/// Attaches `scheme` to `base`. Slot `x` of the scheme initially holds the
/// particle with identity `x`.
pub fn annotate(base: &SymmetricState, scheme: &RankingScheme) -> Result<AnnotatedState, StateError> {
    if scheme.len() != base.len() {
        return Err(StateError::SchemeSize { scheme: scheme.len(), particles: base.len() });
    }
    scheme.validate()?;
    let slots = base
        .members()
        .iter()
        .map(|m| Description {
            identity: m.identity,
            label: m.label.clone(),
            state: m.state.clone(),
            phi0: m.angles.phi,
        })
        .collect();
    let mut out = AnnotatedState {
        base: base.clone(),
        slots,
        scheme: scheme.clone(),
        windings: WindingVector(Vec::new()),
        phase: Phase::one(),
        tie_tolerance: base.tolerances().geometric,
    };
    out.recompute()?;
    Ok(out)
}

impl AnnotatedState {
    fn azimuths(&self) -> Result<Rank0Azimuths, StateError> {
        let az = Rank0Azimuths::with_identities(
            self.slots.iter().map(|d| d.phi0).collect(),
            self.slots.iter().map(|d| d.identity.0).collect(),
        )?;
        Ok(az.with_tie_tolerance(self.tie_tolerance))
    }

    fn recompute(&mut self) -> Result<(), StateError> {
        self.windings = scheme_windings(&self.scheme, &self.azimuths()?)?;
        self.phase = self.slots.iter().zip(&self.windings.0).map(|(d, &n)| winding_phase(d.state.m, n)).product();
        Ok(())
    }

    fn slot_of(&self, id: ParticleId) -> Result<usize, StateError> {
        self.slots.iter().position(|d| d.identity == id).ok_or(StateError::UnknownIdentity(id.0))
    }

    pub fn base(&self) -> &SymmetricState {
        &self.base
    }

    pub fn scheme(&self) -> &RankingScheme {
        &self.scheme
    }

    pub fn slots(&self) -> &[Description] {
        &self.slots
    }

    /// Relative phase of this state with respect to its symmetric reference.
    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Windings per slot.
    pub fn slot_windings(&self) -> &WindingVector {
        &self.windings
    }

    /// Windings indexed by particle identity.
    pub fn windings_by_identity(&self) -> WindingVector {
        let mut out = vec![0; self.slots.len()];
        for (d, &n) in self.slots.iter().zip(&self.windings.0) {
            out[d.identity.0] = n;
        }
        WindingVector(out)
    }
}

/// Exchanges the descriptions of particles `a` and `b` and recomputes every
/// winding under the unchanged scheme.
pub fn exchange(
    state: &AnnotatedState,
    a: ParticleId,
    b: ParticleId,
) -> Result<(AnnotatedState, ExchangeReport), StateError> {
    if a == b {
        return Err(StateError::SameParticle(a.0));
    }
    let sa = state.slot_of(a)?;
    let sb = state.slot_of(b)?;
    let mut next = state.clone();
    next.slots.swap(sa, sb);
    next.recompute()?;

    let before = state.windings_by_identity();
    let winding_deltas = next.windings_by_identity().delta_from(&before);
    let third_party_affected = winding_deltas
        .0
        .iter()
        .enumerate()
        .filter(|&(id, &d)| d != 0 && id != a.0 && id != b.0)
        .map(|(id, _)| ParticleId(id))
        .collect();
    let exchange_phase = next.phase.ratio(state.phase);
    let vanishes =
        state.slots[sa].state.same_description(&state.slots[sb].state) && exchange_phase == Phase::minus_one();
    let report = ExchangeReport { pair: (a, b), exchange_phase, winding_deltas, third_party_affected, vanishes };
    Ok((next, report))
}

/// Whether exchanging `a` and `b` forces the state to vanish.
pub fn pauli_check(state: &AnnotatedState, a: ParticleId, b: ParticleId) -> Result<bool, StateError> {
    Ok(exchange(state, a, b)?.1.vanishes)
}
