use serde::Serialize;

use super::{cyclic_scheme, CspError};
use crate::exactphase::{HalfInt, Phase, Rational};
use crate::statevec::{
    annotate, build_symmetric, exchange, CanonicalChoice, FrameKind, Kinematics, ParticleId, ParticleState,
};
use crate::tolerance::Tolerances;

/// Four particles `i < j < k < l` in azimuth under the 4-cycle rank-1 scheme.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BreakdownWitness {
    pub spins: [HalfInt; 4],
    pub annotation_phase: Phase,
    pub expected_annotation_phase: Phase,
    /// `i ↔ j`.
    pub single_ij: Phase,
    pub expected_single_ij: Phase,
    /// `i ↔ j` followed by `j ↔ k`, relative to the original state.
    pub double_net: Phase,
    pub expected_double_net: Phase,
    /// `k ↔ l` from the original state.
    pub single_kl: Phase,
    /// Net phase the conventional rule demands for the double exchange.
    pub conventional_double: Phase,
    /// All computed phases match their expected values.
    pub reproduces: bool,
    /// The double exchange disagrees with the conventional rule.
    pub conventional_violated: bool,
}

fn sign(s: HalfInt) -> Phase {
    Phase::sign_power(s.twice())
}

/// Builds the witness for four particles with the given spins (each with
/// `m = s`) at azimuths 0, 1/4, 1/2 and 3/4 turn.
pub fn four_fermion_witness(spins: [HalfInt; 4]) -> Result<BreakdownWitness, CspError> {
    let particles = spins
        .iter()
        .enumerate()
        .map(|(x, &s)| {
            let kin = Kinematics::Angles { theta: 1.0, phi_turns: Rational::new(x as i64, 4) };
            let p = ParticleState::new("q", kin, s, s, FrameKind::Canonical)?;
            Ok((["i", "j", "k", "l"][x].to_string(), p))
        })
        .collect::<Result<Vec<_>, CspError>>()?;
    let state = build_symmetric(particles, FrameKind::Canonical, &CanonicalChoice::default(), &Tolerances::default())?;
    let ids: Vec<ParticleId> = (0..4).map(ParticleId).collect();
    let annotated = annotate(&state, &cyclic_scheme(4, &ids)?)?;
    let (i, j, k, l) = (ids[0], ids[1], ids[2], ids[3]);

    let (after_ij, r1) = exchange(&annotated, i, j)?;
    let (after_jk, _) = exchange(&after_ij, j, k)?;
    let double_net = after_jk.phase().ratio(annotated.phase());
    let (_, r_kl) = exchange(&annotated, k, l)?;

    let expected = |s: HalfInt| if s.is_half_odd() { Phase::minus_one() } else { Phase::one() };
    let conventional_double = expected(spins[0]) * expected(spins[1]) * expected(spins[1]) * expected(spins[2]);

    let expected_annotation_phase = sign(spins[0]);
    let expected_single_ij = sign(spins[1]);
    let expected_double_net = sign(spins[2]);
    Ok(BreakdownWitness {
        spins,
        annotation_phase: annotated.phase(),
        expected_annotation_phase,
        single_ij: r1.exchange_phase,
        expected_single_ij,
        double_net,
        expected_double_net,
        single_kl: r_kl.exchange_phase,
        conventional_double,
        reproduces: annotated.phase() == expected_annotation_phase
            && r1.exchange_phase == expected_single_ij
            && double_net == expected_double_net,
        conventional_violated: double_net != conventional_double,
    })
}

/// The witness for four spin-1/2 fermions.
pub fn four_fermion_breakdown() -> Result<BreakdownWitness, CspError> {
    four_fermion_witness([HalfInt::HALF; 4])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_half_quadruple() {
        let w = four_fermion_breakdown().unwrap();
        assert!(w.reproduces);
        assert_eq!(w.single_ij, Phase::minus_one());
        assert_eq!(w.double_net, Phase::minus_one());
        assert_eq!(w.single_kl, Phase::minus_one());
        assert_eq!(w.conventional_double, Phase::one());
        assert!(w.conventional_violated);
    }

    #[test]
    fn all_bosons_are_trivial() {
        let w = four_fermion_witness([HalfInt::ONE, HalfInt::ZERO, HalfInt::from_twice(4), HalfInt::ONE]).unwrap();
        assert!(w.reproduces && !w.conventional_violated);
        for p in [w.annotation_phase, w.single_ij, w.double_net, w.single_kl] {
            assert_eq!(p, Phase::one());
        }
    }
}
