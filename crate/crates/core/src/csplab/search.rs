use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::{sorted_identities, CspError};
use crate::ranking::RankingScheme;
use crate::statevec::SymmetricState;

pub const MAX_SEARCH_PARTICLES: usize = 5;
pub const MAX_SEARCH_RANK: usize = 3;
/// Largest number of candidate schemes examined by default.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SearchHit {
    pub scheme: RankingScheme,
    /// Every fermion-boson transposition also gives +1, directly and after
    /// any first exchange.
    pub fermion_boson_stable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub particles: usize,
    pub max_rank: usize,
    pub candidates: u64,
    /// Passing schemes before merging relabelings.
    pub raw_passing: u64,
    /// Passing schemes, one per class of relabelings of particles sharing
    /// azimuth and spin, sorted.
    pub hits: Vec<SearchHit>,
    pub any_fermion_boson_stable: bool,
}

/// One exchange step in arrangement space: from arrangement `from` to `to`,
/// whose phase parity must differ by `parity`.
#[derive(Clone, Copy)]
struct Edge {
    from: usize,
    to: usize,
    parity: u8,
}

fn sequences_for(target: usize, n: usize, max_rank: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_rank {
        let mut next = Vec::new();
        for seq in &frontier {
            for q in (0..n).filter(|&q| q != target && !seq.contains(&q)) {
                let mut s: Vec<usize> = seq.clone();
                s.push(q);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Searches every scheme whose sequences are chains of distinct other
/// particles of length at most `max_rank`, keeping those under which fermion
/// pairs exchange with −1 and boson pairs with +1, for single exchanges and
/// for the second step of every double exchange (whatever the first step).
///
/// Phases are evaluated through order bits only: the parity of a scheme under
/// an arrangement of descriptions is the sum, over slots holding a fermion,
/// of the order bits along that slot's chain.
pub fn scheme_search(state: &SymmetricState, max_rank: usize, budget: u64) -> Result<SearchReport, CspError> {
    let n = state.len();
    if n > MAX_SEARCH_PARTICLES || max_rank > MAX_SEARCH_RANK {
        return Err(CspError::SearchTooLarge { particles: n, max_rank });
    }
    let choices: Vec<Vec<Vec<usize>>> = (0..n).map(|t| sequences_for(t, n, max_rank)).collect();
    let total: u128 = choices.iter().map(|c| c.len() as u128).product();
    if total > u128::from(budget) {
        return Err(CspError::BudgetExceeded { candidates: total, budget });
    }
    let total = total as u64;

    let order = sorted_identities(state)?;
    let mut rank = vec![0usize; n];
    for (r, id) in order.iter().enumerate() {
        rank[id.0] = r;
    }
    let fermion: Vec<bool> = state.members().iter().map(|m| m.state.is_fermion()).collect();

    // Arrangements reachable by at most two transpositions of descriptions.
    let mut arrangements: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut intern = |a: Vec<usize>| -> usize {
        *index.entry(a.clone()).or_insert_with(|| {
            arrangements.push(a);
            arrangements.len() - 1
        })
    };
    let swap = |arr: &[usize], a: usize, b: usize| -> Vec<usize> {
        arr.iter()
            .map(|&x| {
                if x == a {
                    b
                } else if x == b {
                    a
                } else {
                    x
                }
            })
            .collect()
    };
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let constrained = |(a, b): (usize, usize)| fermion[a] == fermion[b];
    let expected = |(a, b): (usize, usize)| u8::from(fermion[a] && fermion[b]);

    let start: Vec<usize> = (0..n).collect();
    let s0 = intern(start.clone());
    let mut edges = Vec::new();
    let mut fb_edges = Vec::new();
    let mut bases = vec![(s0, start.clone())];
    for &p in &pairs {
        let a = swap(&start, p.0, p.1);
        bases.push((intern(a.clone()), a));
    }
    for (ib, base) in &bases {
        for &p in &pairs {
            let ic = intern(swap(base, p.0, p.1));
            let edge = Edge { from: *ib, to: ic, parity: expected(p) };
            if constrained(p) {
                edges.push(edge);
            } else {
                fb_edges.push(edge);
            }
        }
    }
    debug_assert!(arrangements.len() <= 128);

    // bits[t][c]: bit a set when slot t holds a fermion under arrangement a
    // and chain c winds it an odd number of times.
    let bits: Vec<Vec<u128>> = (0..n)
        .map(|t| {
            choices[t]
                .iter()
                .map(|seq| {
                    let mut mask = 0u128;
                    for (ai, arr) in arrangements.iter().enumerate() {
                        if seq.is_empty() || !fermion[arr[t]] {
                            continue;
                        }
                        let chain: Vec<usize> = seq.iter().copied().chain(std::iter::once(t)).collect();
                        let winding: usize = chain.windows(2).filter(|w| rank[arr[w[1]]] < rank[arr[w[0]]]).count();
                        if winding % 2 == 1 {
                            mask |= 1 << ai;
                        }
                    }
                    mask
                })
                .collect()
        })
        .collect();

    let bit = |mask: u128, a: usize| ((mask >> a) & 1) as u8;
    let passing: Vec<(Vec<usize>, bool)> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut rest = code;
            let mut picks = Vec::with_capacity(n);
            let mut mask = 0u128;
            for t in 0..n {
                let k = (rest % choices[t].len() as u64) as usize;
                rest /= choices[t].len() as u64;
                mask ^= bits[t][k];
                picks.push(k);
            }
            if edges.iter().all(|e| bit(mask, e.from) ^ bit(mask, e.to) == e.parity) {
                let stable = fb_edges.iter().all(|e| bit(mask, e.from) == bit(mask, e.to));
                Some((picks, stable))
            } else {
                None
            }
        })
        .collect();

    // Relabelings among particles with the same azimuth and spin.
    let classes: Vec<usize> = (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| {
                    let (a, b) = (&state.members()[x], &state.members()[y]);
                    a.angles.phi == b.angles.phi && a.state.s == b.state.s
                })
                .unwrap_or(x)
        })
        .collect();
    let perms: Vec<Vec<usize>> =
        permutations(n).into_iter().filter(|p| (0..n).all(|x| classes[p[x]] == classes[x])).collect();

    let raw_passing = passing.len() as u64;
    let hits: BTreeSet<SearchHit> = passing
        .into_iter()
        .map(|(picks, stable)| {
            let seqs = picks.iter().enumerate().map(|(t, &k)| choices[t][k].clone()).collect();
            let scheme = RankingScheme::new(seqs).expect("enumerated chains are valid");
            let canonical = perms.iter().map(|p| scheme.relabeled(p)).min().unwrap_or(scheme);
            SearchHit { scheme: canonical, fermion_boson_stable: stable }
        })
        .collect();
    let hits: Vec<SearchHit> = hits.into_iter().collect();
    Ok(SearchReport {
        particles: n,
        max_rank,
        candidates: total,
        raw_passing,
        any_fermion_boson_stable: hits.iter().any(|h| h.fermion_boson_stable),
        hits,
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csplab::{phase_table, PairKind};
    use crate::exactphase::Phase;
    use crate::statevec::{annotate, ParticleId};
    use crate::test_support::angled_state;

    #[test]
    fn three_fermions_rank1_find_both_cycles() {
        let s = angled_state(&[(0, 1), (1, 3), (2, 3)], &[1, 1, 1]);
        let r = scheme_search(&s, 1, DEFAULT_BUDGET).unwrap();
        let schemes: Vec<_> = r.hits.iter().map(|h| h.scheme.sequences().to_vec()).collect();
        assert_eq!(schemes, vec![vec![vec![1], vec![2], vec![0]], vec![vec![2], vec![0], vec![1]]]);
        assert_eq!(r.candidates, 27);
    }

    #[test]
    fn four_fermions_need_rank2() {
        let s = angled_state(&[(0, 1), (1, 4), (1, 2), (3, 4)], &[1, 1, 1, 1]);
        assert!(scheme_search(&s, 1, DEFAULT_BUDGET).unwrap().hits.is_empty());
        let r = scheme_search(&s, 2, DEFAULT_BUDGET).unwrap();
        assert!(!r.hits.is_empty());
    }

    #[test]
    fn search_agrees_with_phase_tables_on_every_candidate() {
        for spins in [[1, 0, 1], [1, 1, 1], [0, 1, 2], [3, 1, 2]] {
            let s = angled_state(&[(0, 1), (2, 5), (1, 5)], &spins);
            let r = scheme_search(&s, 2, DEFAULT_BUDGET).unwrap();
            let choices: Vec<_> = (0..3).map(|t| sequences_for(t, 3, 2)).collect();
            let mut passing = 0;
            for a in &choices[0] {
                for b in &choices[1] {
                    for c in &choices[2] {
                        let scheme = RankingScheme::new(vec![a.clone(), b.clone(), c.clone()]).unwrap();
                        let t = phase_table(&annotate(&s, &scheme).unwrap()).unwrap();
                        let hit = r.hits.iter().find(|h| h.scheme == scheme);
                        assert_eq!(t.conventional, hit.is_some(), "{scheme:?}");
                        if let Some(h) = hit {
                            passing += 1;
                            let fb = |first: (ParticleId, ParticleId)| kind(&s, first) == PairKind::FermionBoson;
                            let stable = t.singles.iter().filter(|e| fb(e.pair)).all(|e| e.phase == Phase::one())
                                && t.doubles.iter().filter(|e| fb(e.second)).all(|e| e.second_phase == Phase::one());
                            assert_eq!(h.fermion_boson_stable, stable, "{scheme:?}");
                        }
                    }
                }
            }
            assert_eq!(passing, r.hits.len());
        }
    }

    fn kind(s: &SymmetricState, (a, b): (ParticleId, ParticleId)) -> PairKind {
        match (s.members()[a.0].state.is_fermion(), s.members()[b.0].state.is_fermion()) {
            (true, true) => PairKind::FermionFermion,
            (false, false) => PairKind::BosonBoson,
            _ => PairKind::FermionBoson,
        }
    }

    #[test]
    fn limits() {
        let s = angled_state(&[(0, 1), (1, 5), (2, 5), (3, 5), (4, 5)], &[1, 1, 1, 1, 1]);
        assert!(matches!(scheme_search(&s, 3, DEFAULT_BUDGET), Err(CspError::BudgetExceeded { .. })));
        assert!(matches!(scheme_search(&s, 4, DEFAULT_BUDGET), Err(CspError::SearchTooLarge { .. })));
    }
}
