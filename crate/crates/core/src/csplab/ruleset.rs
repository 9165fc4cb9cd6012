use serde::Serialize;

use super::CspError;
use crate::ranking::{index_sort_azimuths, RankingScheme};
use crate::statevec::{ParticleId, SymmetricState};

/// Scheme produced by the emulation rules, with the orders it was built from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RuleSetScheme {
    pub scheme: RankingScheme,
    /// All particles by rank-0 azimuth.
    pub order: Vec<ParticleId>,
    /// Fermions by rank-0 azimuth.
    pub fermions: Vec<ParticleId>,
}

/// Particles sorted by rank-0 azimuth, ties by identity.
pub fn sorted_identities(state: &SymmetricState) -> Result<Vec<ParticleId>, CspError> {
    Ok(index_sort_azimuths(&state.phi0())?.into_iter().map(ParticleId).collect())
}

/// Each of `ring` ranked once on its predecessor in cyclic order; everything
/// else rank 0.
pub fn cyclic_scheme(n: usize, ring: &[ParticleId]) -> Result<RankingScheme, CspError> {
    let mut sequences = vec![Vec::new(); n];
    if ring.len() >= 2 {
        for (k, id) in ring.iter().enumerate() {
            let prev = ring[(k + ring.len() - 1) % ring.len()];
            sequences[id.0] = vec![prev.0];
        }
    }
    Ok(RankingScheme::new(sequences)?)
}

/// Bosons rank 0. One fermion: rank 0. Two: the second ranked on the first.
/// Three: each ranked on the previous one, cyclically.
pub fn build_ruleset_scheme(state: &SymmetricState) -> Result<RuleSetScheme, CspError> {
    let order = sorted_identities(state)?;
    let fermions: Vec<ParticleId> =
        order.iter().copied().filter(|id| state.members()[id.0].state.is_fermion()).collect();
    let n = state.len();
    let scheme = match fermions.len() {
        0 | 1 => RankingScheme::rank0(n),
        2 => RankingScheme::rank0(n).with_sequence(fermions[1].0, vec![fermions[0].0])?,
        3 => cyclic_scheme(n, &fermions)?,
        count => return Err(CspError::TooManyFermions { count }),
    };
    Ok(RuleSetScheme { scheme, order, fermions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::angled_state;

    #[test]
    fn three_fermions_are_cyclic() {
        let s = angled_state(&[(1, 2), (0, 1), (1, 4)], &[1, 1, 1]);
        let r = build_ruleset_scheme(&s).unwrap();
        assert_eq!(r.order, vec![ParticleId(1), ParticleId(2), ParticleId(0)]);
        // f1 = 1 on f3 = 0, f2 = 2 on f1, f3 = 0 on f2
        assert_eq!(r.scheme.sequences(), &[vec![2], vec![0], vec![1]]);
    }

    #[test]
    fn bosons_stay_rank0() {
        let s = angled_state(&[(0, 1), (1, 4), (1, 2), (3, 4)], &[1, 2, 0, 3]);
        let r = build_ruleset_scheme(&s).unwrap();
        assert_eq!(r.scheme.sequences(), &[vec![], vec![], vec![], vec![0]]);
        assert!(!r.scheme.is_referenced(1) && !r.scheme.is_referenced(2));
        let s = angled_state(&[(0, 1), (1, 4)], &[0, 2]);
        assert_eq!(build_ruleset_scheme(&s).unwrap().scheme, RankingScheme::rank0(2));
        let s = angled_state(&[(0, 1), (1, 4), (1, 2), (3, 4)], &[1, 1, 1, 1]);
        assert_eq!(build_ruleset_scheme(&s).unwrap_err(), CspError::TooManyFermions { count: 4 });
    }
}
