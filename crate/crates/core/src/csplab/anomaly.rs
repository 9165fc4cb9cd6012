use serde::Serialize;

use super::{cyclic_scheme, sorted_identities, CspError};
use crate::exactphase::Phase;
use crate::statevec::{annotate, exchange, ParticleId, SymmetricState};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnomalyReport {
    /// Particles by rank-0 azimuth.
    pub order: Vec<ParticleId>,
    pub middle: ParticleId,
    pub middle_is_fermion: bool,
    pub bosons: (ParticleId, ParticleId),
    /// Phase of exchanging the two bosons under the cyclic scheme.
    pub phase: Phase,
    pub anomalous: bool,
}

/// Two bosons and one fermion under the cyclic rank-1 scheme over all three:
/// exchanging the bosons picks up `(-1)^{2s}` of whichever particle sits
/// between them in azimuth.
pub fn boson_anomaly_check(state: &SymmetricState) -> Result<AnomalyReport, CspError> {
    if state.len() != 3 {
        return Err(CspError::Composition(format!("need 3 particles, got {}", state.len())));
    }
    let bosons: Vec<ParticleId> =
        state.members().iter().filter(|m| !m.state.is_fermion()).map(|m| m.identity).collect();
    if bosons.len() < 2 {
        return Err(CspError::Composition(format!("need at least 2 bosons, got {}", bosons.len())));
    }
    let (a, b) = (bosons[0], bosons[1]);
    let order = sorted_identities(state)?;
    let scheme = cyclic_scheme(3, &order)?;
    let annotated = annotate(state, &scheme)?;
    let (_, rep) = exchange(&annotated, a, b)?;
    let middle = order[1];
    Ok(AnomalyReport {
        middle_is_fermion: state.members()[middle.0].state.is_fermion(),
        order,
        middle,
        bosons: (a, b),
        phase: rep.exchange_phase,
        anomalous: rep.exchange_phase == Phase::minus_one(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactphase::Rational;
    use crate::test_support::angled_state;

    #[test]
    fn fermion_between_bosons() {
        let s = angled_state(&[(0, 1), (1, 4), (1, 2)], &[0, 1, 2]);
        let r = boson_anomaly_check(&s).unwrap();
        assert!(r.anomalous && r.middle_is_fermion);
        // Turning the frame by 3/8: azimuths become 5/8, 7/8, 1/8.
        let r = boson_anomaly_check(&s.rotated_canonical(Rational::new(3, 8))).unwrap();
        assert!(!r.middle_is_fermion);
        assert!(!r.anomalous);
        let s = angled_state(&[(0, 1), (1, 4), (1, 2)], &[0, 2, 4]);
        assert!(!boson_anomaly_check(&s).unwrap().anomalous);
    }
}
