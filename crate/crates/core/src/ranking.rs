//! Order-dependent azimuth definitions.
//!
//! A rank-0 azimuth `φ⁰ ∈ [0, 1)` turn is chosen independently per particle.
//! A rank-n azimuth for particle `t` is defined through a chain of
//! predecessors `q_1 … q_n`:
//!
//! ```text
//! φ(t) = φ⁰(q_1) + Δ(q_2, q_1) + … + Δ(q_n, q_{n-1}) + Δ(t, q_n)
//! ```
//!
//! where `Δ(j, i) ∈ [0, 1]` turn is `φ⁰_j − φ⁰_i` reduced mod one turn, with
//! equal angles resolved by particle identity. The result always differs from
//! `φ⁰(t)` by a whole number of turns, the winding `N`.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::exactphase::{Rational, TurnAngle};
use crate::tolerance::DEFAULT_GEOMETRIC;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankingError {
    #[error("Δ and d need two distinct particles, got {index} twice")]
    SameParticle { index: usize },
    #[error("azimuths of particles {i} and {j} are within tolerance but not certifiably equal")]
    InexactTie { i: usize, j: usize },
    #[error("invalid ranking sequence for particle {target}: {reason}")]
    InvalidSequence { target: usize, reason: String },
    #[error("particle index {index} out of range for {len} particles")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("scheme covers {scheme} particles but {azimuths} azimuths were given")]
    LengthMismatch { scheme: usize, azimuths: usize },
    #[error("particle identities must be unique")]
    DuplicateIdentity,
}

/// Rank-0 azimuths, one per particle, each reduced to `[0, 1)` turn.
///
/// `identities` are the immutable particle identities used to break ties
/// between equal azimuths; by default particle `i` has identity `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rank0Azimuths {
    phi0: Vec<TurnAngle>,
    identities: Vec<usize>,
    tie_tolerance: f64,
}

impl Rank0Azimuths {
    pub fn new(phi0: Vec<TurnAngle>) -> Self {
        let n = phi0.len();
        Self {
            phi0: phi0.iter().map(TurnAngle::normalized).collect(),
            identities: (0..n).collect(),
            tie_tolerance: DEFAULT_GEOMETRIC,
        }
    }

    pub fn from_turns(turns: &[Rational]) -> Self {
        Self::new(turns.iter().copied().map(TurnAngle::from_turns).collect())
    }

    pub fn with_identities(phi0: Vec<TurnAngle>, identities: Vec<usize>) -> Result<Self, RankingError> {
        if identities.len() != phi0.len() {
            return Err(RankingError::LengthMismatch { scheme: identities.len(), azimuths: phi0.len() });
        }
        let mut sorted = identities.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(RankingError::DuplicateIdentity);
        }
        Ok(Self { identities, ..Self::new(phi0) })
    }

    /// Radians below which two inexact azimuths are an uncertifiable tie.
    pub fn with_tie_tolerance(mut self, tol: f64) -> Self {
        self.tie_tolerance = tol;
        self
    }

    pub fn len(&self) -> usize {
        self.phi0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi0.is_empty()
    }

    pub fn phi(&self, i: usize) -> TurnAngle {
        self.phi0[i]
    }

    pub fn identity(&self, i: usize) -> usize {
        self.identities[i]
    }

    pub fn angles(&self) -> &[TurnAngle] {
        &self.phi0
    }

    pub fn is_exact(&self) -> bool {
        self.phi0.iter().all(TurnAngle::is_exact)
    }

    /// Azimuths seen through a slot arrangement: entry `x` of the result is
    /// entry `arrangement[x]` of `self`, identity included.
    pub fn rearranged(&self, arrangement: &[usize]) -> Self {
        Self {
            phi0: arrangement.iter().map(|&a| self.phi0[a]).collect(),
            identities: arrangement.iter().map(|&a| self.identities[a]).collect(),
            tie_tolerance: self.tie_tolerance,
        }
    }

    fn check(&self, i: usize) -> Result<(), RankingError> {
        if i < self.len() {
            Ok(())
        } else {
            Err(RankingError::IndexOutOfRange { index: i, len: self.len() })
        }
    }

    /// Certified comparison of azimuths only (no identity tie-break).
    fn cmp_phi(&self, j: usize, i: usize) -> Result<Ordering, RankingError> {
        self.phi0[j].cmp_certified(&self.phi0[i], self.tie_tolerance).ok_or(RankingError::InexactTie { i, j })
    }

    /// Total order on particles: by azimuth, then by identity.
    pub fn cmp_particles(&self, j: usize, i: usize) -> Result<Ordering, RankingError> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.cmp_phi(j, i)?.then(self.identities[j].cmp(&self.identities[i])))
    }
}

/// Per-particle predecessor sequences. An empty sequence is rank 0; a
/// sequence of length `n` is rank `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct RankingScheme {
    sequences: Vec<Vec<usize>>,
}

impl RankingScheme {
    /// Every particle at rank 0.
    pub fn rank0(n: usize) -> Self {
        Self { sequences: vec![Vec::new(); n] }
    }

    pub fn new(sequences: Vec<Vec<usize>>) -> Result<Self, RankingError> {
        let scheme = Self { sequences };
        scheme.validate()?;
        Ok(scheme)
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn sequence(&self, i: usize) -> &[usize] {
        &self.sequences[i]
    }

    pub fn sequences(&self) -> &[Vec<usize>] {
        &self.sequences
    }

    pub fn rank(&self, i: usize) -> usize {
        self.sequences[i].len()
    }

    pub fn max_rank(&self) -> usize {
        self.sequences.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn with_sequence(mut self, target: usize, sequence: Vec<usize>) -> Result<Self, RankingError> {
        if target >= self.len() {
            return Err(RankingError::IndexOutOfRange { index: target, len: self.len() });
        }
        validate_sequence(target, &sequence, self.len())?;
        self.sequences[target] = sequence;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), RankingError> {
        let n = self.len();
        self.sequences.iter().enumerate().try_for_each(|(t, s)| validate_sequence(t, s, n))
    }

    /// Does particle `x` appear in any sequence?
    pub fn is_referenced(&self, x: usize) -> bool {
        self.sequences.iter().any(|s| s.contains(&x))
    }

    /// The same dependency structure with particle `x` renamed `perm[x]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let mut sequences = vec![Vec::new(); self.len()];
        for (x, seq) in self.sequences.iter().enumerate() {
            sequences[perm[x]] = seq.iter().map(|&q| perm[q]).collect();
        }
        Self { sequences }
    }
}

fn validate_sequence(target: usize, sequence: &[usize], n: usize) -> Result<(), RankingError> {
    let invalid = |reason: String| RankingError::InvalidSequence { target, reason };
    if let Some(&q) = sequence.iter().find(|&&q| q >= n) {
        return Err(invalid(format!("predecessor {q} out of range for {n} particles")));
    }
    if sequence.contains(&target) {
        return Err(invalid("a particle cannot appear in its own sequence".into()));
    }
    if sequence.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid("consecutive predecessors must differ".into()));
    }
    Ok(())
}

/// Per-particle windings `N_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct WindingVector(pub Vec<i64>);

impl WindingVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry-wise `self − before`.
    pub fn delta_from(&self, before: &WindingVector) -> WindingVector {
        WindingVector(self.0.iter().zip(&before.0).map(|(a, b)| a - b).collect())
    }
}

/// Permutation sorting particles by rank-0 azimuth, ties kept in input order.
/// `result[r]` is the particle at position `r`.
pub fn index_sort(phi0: &[TurnAngle]) -> Result<Vec<usize>, RankingError> {
    let az = Rank0Azimuths::new(phi0.to_vec());
    index_sort_azimuths(&az)
}

/// As [`index_sort`], breaking ties by the stored identities.
pub fn index_sort_azimuths(az: &Rank0Azimuths) -> Result<Vec<usize>, RankingError> {
    let n = az.len();
    for i in 0..n {
        for j in i + 1..n {
            az.cmp_phi(j, i)?;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| az.cmp_particles(a, b).unwrap_or(Ordering::Equal));
    Ok(order)
}

fn distinct(j: usize, i: usize, az: &Rank0Azimuths) -> Result<(), RankingError> {
    az.check(i)?;
    az.check(j)?;
    if i == j {
        Err(RankingError::SameParticle { index: i })
    } else {
        Ok(())
    }
}

/// `Δ_{ji} ∈ [0, 1]` turn with `Δ_{ji} ≡ φ⁰_j − φ⁰_i`; for equal azimuths it is
/// 0 when `i` precedes `j` in identity order and one full turn otherwise.
pub fn delta(j: usize, i: usize, az: &Rank0Azimuths) -> Result<TurnAngle, RankingError> {
    distinct(j, i, az)?;
    match az.cmp_phi(j, i)? {
        Ordering::Equal => {
            if az.identity(i) < az.identity(j) {
                Ok(TurnAngle::zero())
            } else {
                Ok(TurnAngle::from_int_turns(1))
            }
        }
        _ => Ok((az.phi(j) - az.phi(i)).normalized()),
    }
}

/// Order bit: `d_{ji} = 1` when `j` precedes `i` (smaller azimuth, or equal
/// azimuth and smaller identity), else 0.
pub fn d_order(j: usize, i: usize, az: &Rank0Azimuths) -> Result<i64, RankingError> {
    distinct(j, i, az)?;
    Ok(i64::from(az.cmp_particles(j, i)? == Ordering::Less))
}

fn validate_chain(target: usize, sequence: &[usize], az: &Rank0Azimuths) -> Result<(), RankingError> {
    az.check(target)?;
    if sequence.is_empty() {
        return Err(RankingError::InvalidSequence { target, reason: "sequence is empty".into() });
    }
    validate_sequence(target, sequence, az.len())
}

/// Links `(later, earlier)` of the chain `q_1 → … → q_n → target`.
fn links<'a>(target: usize, sequence: &'a [usize]) -> impl Iterator<Item = (usize, usize)> + 'a {
    sequence.windows(2).map(|w| (w[1], w[0])).chain(std::iter::once((target, sequence[sequence.len() - 1])))
}

/// Rank-n azimuth of `target` through `sequence`, and its winding
/// `N = (φ − φ⁰_target) / 2π` obtained from the angle difference.
pub fn rank_n_phi(target: usize, sequence: &[usize], az: &Rank0Azimuths) -> Result<(TurnAngle, i64), RankingError> {
    validate_chain(target, sequence, az)?;
    let mut phi = az.phi(sequence[0]);
    for (later, earlier) in links(target, sequence) {
        phi = phi + delta(later, earlier, az)?;
    }
    let offset = phi - az.phi(target);
    let winding = match offset.exact() {
        Some(r) => {
            debug_assert!(r.is_integer(), "chain offset {r} is not a whole number of turns");
            r.to_integer()
        }
        None => offset.turns().round() as i64,
    };
    Ok((phi, winding))
}

/// Winding as the sum of order bits along the chain:
/// `N = Σ_{links} d(later, earlier)`.
pub fn winding_number(target: usize, sequence: &[usize], az: &Rank0Azimuths) -> Result<i64, RankingError> {
    validate_chain(target, sequence, az)?;
    links(target, sequence).map(|(later, earlier)| d_order(later, earlier, az)).sum()
}

/// Closed form that closes the chain through its first link,
/// `d(target, q_1) + Σ_{interior links} d`. It agrees with
/// [`winding_number`] exactly when `d(target, q_1) = d(target, q_n)`, which
/// always holds at rank 1 and for index-ordered ascending chains.
pub fn closing_link_winding(target: usize, sequence: &[usize], az: &Rank0Azimuths) -> Result<i64, RankingError> {
    validate_chain(target, sequence, az)?;
    let interior: i64 = sequence.windows(2).map(|w| d_order(w[1], w[0], az)).sum::<Result<i64, _>>()?;
    Ok(d_order(target, sequence[0], az)? + interior)
}

/// `N = odd_part + order_part` with `odd_part = 1 − 2 d(q_n, target)` (always
/// odd) and `order_part` counting the out-of-order steps of the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParityDecomposition {
    pub odd_part: i64,
    pub order_part: i64,
}

impl ParityDecomposition {
    pub fn total(&self) -> i64 {
        self.odd_part + self.order_part
    }
}

pub fn parity_decomposition(
    target: usize,
    sequence: &[usize],
    az: &Rank0Azimuths,
) -> Result<ParityDecomposition, RankingError> {
    validate_chain(target, sequence, az)?;
    let last = sequence[sequence.len() - 1];
    let reverse_last = d_order(last, target, az)?;
    let interior: i64 = sequence.windows(2).map(|w| d_order(w[1], w[0], az)).sum::<Result<i64, _>>()?;
    Ok(ParityDecomposition { odd_part: 1 - 2 * reverse_last, order_part: interior + reverse_last })
}

/// Windings of every particle under `scheme`.
pub fn scheme_windings(scheme: &RankingScheme, az: &Rank0Azimuths) -> Result<WindingVector, RankingError> {
    if scheme.len() != az.len() {
        return Err(RankingError::LengthMismatch { scheme: scheme.len(), azimuths: az.len() });
    }
    (0..scheme.len())
        .map(|t| match scheme.sequence(t) {
            [] => Ok(0),
            seq => winding_number(t, seq, az),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(WindingVector)
}
