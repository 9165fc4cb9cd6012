use serde::Serialize;

use super::CspError;
use crate::exactphase::Phase;
use crate::statevec::{exchange, AnnotatedState, ParticleId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    FermionFermion,
    BosonBoson,
    FermionBoson,
}

impl PairKind {
    /// Phase the conventional rule demands, if it demands one.
    pub fn expected(self) -> Option<Phase> {
        match self {
            PairKind::FermionFermion => Some(Phase::minus_one()),
            PairKind::BosonBoson => Some(Phase::one()),
            PairKind::FermionBoson => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingleEntry {
    pub pair: (ParticleId, ParticleId),
    pub kind: PairKind,
    pub phase: Phase,
    pub third_party_affected: Vec<ParticleId>,
}

/// Two transpositions applied one after the other.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoubleEntry {
    pub first: (ParticleId, ParticleId),
    pub second: (ParticleId, ParticleId),
    pub first_phase: Phase,
    pub second_phase: Phase,
    /// Final phase over original phase, from the final windings.
    pub net: Phase,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseTable {
    pub singles: Vec<SingleEntry>,
    pub doubles: Vec<DoubleEntry>,
    /// Every fermion pair gives −1 and every boson pair +1, both directly and
    /// as the second step of a double exchange.
    pub conventional: bool,
}

fn kind(state: &AnnotatedState, a: ParticleId, b: ParticleId) -> PairKind {
    let f = |id: ParticleId| state.base().members()[id.0].state.is_fermion();
    match (f(a), f(b)) {
        (true, true) => PairKind::FermionFermion,
        (false, false) => PairKind::BosonBoson,
        _ => PairKind::FermionBoson,
    }
}

/// Exchange phases of every transposition and of every ordered pair of
/// distinct transpositions, each recomputed from the moved descriptions.
pub fn phase_table(state: &AnnotatedState) -> Result<PhaseTable, CspError> {
    let n = state.base().len();
    let pairs: Vec<(ParticleId, ParticleId)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (ParticleId(a), ParticleId(b)))).collect();
    let mut singles = Vec::new();
    let mut doubles = Vec::new();
    let mut conventional = true;
    let meets = |k: PairKind, p: Phase| k.expected().is_none_or(|e| e == p);
    for &first in &pairs {
        let (mid, rep) = exchange(state, first.0, first.1)?;
        let k1 = kind(state, first.0, first.1);
        conventional &= meets(k1, rep.exchange_phase);
        singles.push(SingleEntry {
            pair: first,
            kind: k1,
            phase: rep.exchange_phase,
            third_party_affected: rep.third_party_affected,
        });
        for &second in pairs.iter().filter(|&&p| p != first) {
            let (end, rep2) = exchange(&mid, second.0, second.1)?;
            let net = end.phase().ratio(state.phase());
            debug_assert!(net == rep.exchange_phase * rep2.exchange_phase);
            conventional &= meets(kind(state, second.0, second.1), rep2.exchange_phase);
            doubles.push(DoubleEntry {
                first,
                second,
                first_phase: rep.exchange_phase,
                second_phase: rep2.exchange_phase,
                net,
            });
        }
    }
    Ok(PhaseTable { singles, doubles, conventional })
}

impl PhaseTable {
    pub fn single(&self, a: ParticleId, b: ParticleId) -> Option<&SingleEntry> {
        self.singles.iter().find(|e| e.pair == (a, b) || e.pair == (b, a))
    }

    pub fn double(&self, first: (ParticleId, ParticleId), second: (ParticleId, ParticleId)) -> Option<&DoubleEntry> {
        let same = |x: (ParticleId, ParticleId), y: (ParticleId, ParticleId)| x == y || x == (y.1, y.0);
        self.doubles.iter().find(|e| same(e.first, first) && same(e.second, second))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csplab::build_ruleset_scheme;
    use crate::statevec::annotate;
    use crate::test_support::angled_state;

    #[test]
    fn sorted_fermions_are_antisymmetric() {
        let s = angled_state(&[(0, 1), (1, 3), (2, 3)], &[1, 1, 3]);
        let r = build_ruleset_scheme(&s).unwrap();
        let t = phase_table(&annotate(&s, &r.scheme).unwrap()).unwrap();
        assert!(t.singles.iter().all(|e| e.phase == Phase::minus_one()));
        assert!(t.doubles.iter().all(|e| e.net == Phase::one()));
        assert!(t.conventional);
        assert_eq!(t.doubles.len(), 6);
    }

    #[test]
    fn boson_in_the_middle_breaks_antisymmetry() {
        let s = angled_state(&[(0, 1), (1, 3), (2, 3)], &[1, 0, 1]);
        let scheme = crate::csplab::cyclic_scheme(3, &[ParticleId(0), ParticleId(1), ParticleId(2)]).unwrap();
        let t = phase_table(&annotate(&s, &scheme).unwrap()).unwrap();
        assert_eq!(t.single(ParticleId(0), ParticleId(2)).unwrap().phase, Phase::one());
        assert!(!t.conventional);
    }
}
