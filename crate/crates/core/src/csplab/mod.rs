//! Conventional-symmetrization experiments: the emulation rule set, exchange
//! phase tables, the mixed boson/fermion anomaly, the four-fermion
//! breakdown, the parity impossibility proof and exhaustive scheme search.

mod anomaly;
mod breakdown;
mod impossibility;
mod ruleset;
mod search;
mod table;

use thiserror::Error;

pub use anomaly::{boson_anomaly_check, AnomalyReport};
pub use breakdown::{four_fermion_breakdown, four_fermion_witness, BreakdownWitness};
pub use impossibility::{impossibility_search, Certificate, CertificateRow, Condition, ParityAssignment, Relaxation};
pub use ruleset::{build_ruleset_scheme, cyclic_scheme, sorted_identities, RuleSetScheme};
pub use search::{scheme_search, SearchHit, SearchReport, DEFAULT_BUDGET, MAX_SEARCH_PARTICLES, MAX_SEARCH_RANK};
pub use table::{phase_table, DoubleEntry, PairKind, PhaseTable, SingleEntry};

use crate::ranking::RankingError;
use crate::statevec::StateError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CspError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Ranking(#[from] RankingError),
    #[error("the emulation rules cover at most 3 fermions, found {count}")]
    TooManyFermions { count: usize },
    #[error("{0}")]
    Composition(String),
    #[error("search over {particles} particles at rank {max_rank} is outside the supported range (≤ {max_p} particles, rank ≤ {max_r})", max_p = MAX_SEARCH_PARTICLES, max_r = MAX_SEARCH_RANK)]
    SearchTooLarge { particles: usize, max_rank: usize },
    #[error("search needs {candidates} candidate schemes, budget is {budget}")]
    BudgetExceeded { candidates: u128, budget: u64 },
}
