use serde::Serialize;

/// Parities of the windings `n^p_q` for ordering labels `p = 1, 2, 3`
/// (rows) and particles `q = i, j, k` (columns).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParityAssignment {
    pub n: [[u8; 3]; 3],
}

impl ParityAssignment {
    /// Assignment number `code` in `0..512`, bit `3p + q` giving `n^{p+1}_q`.
    pub fn from_code(code: u16) -> Self {
        let mut n = [[0u8; 3]; 3];
        for (p, row) in n.iter_mut().enumerate() {
            for (q, bit) in row.iter_mut().enumerate() {
                *bit = ((code >> (3 * p + q)) & 1) as u8;
            }
        }
        Self { n }
    }

    /// Parity of `n^1_q − n^2_q` (equal to that of `n^2_q − n^1_q`).
    pub fn differences(&self) -> [u8; 3] {
        [0, 1, 2].map(|q| self.n[0][q] ^ self.n[1][q])
    }
}

/// "Exactly one of `n^1_a − n^2_a` and `n^2_b − n^1_b` is odd."
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub particles: (usize, usize),
    pub statement: String,
}

impl Condition {
    pub fn holds(&self, d: [u8; 3]) -> bool {
        d[self.particles.0] ^ d[self.particles.1] == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateRow {
    /// Parities of the differences for `i, j, k`.
    pub differences: [u8; 3],
    /// Number of full assignments projecting onto this row.
    pub assignments: usize,
    pub conditions: Vec<bool>,
    pub satisfies_all: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relaxation {
    pub dropped: usize,
    pub satisfying: Vec<[u8; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub conditions: Vec<Condition>,
    pub total_assignments: usize,
    pub rows: Vec<CertificateRow>,
    pub satisfying: usize,
    pub relaxations: Vec<Relaxation>,
    /// Sum over GF(2) of the three conditions' coefficient vectors and of
    /// their right-hand sides: `0 = 1` when inconsistent.
    pub summed_coefficients: [u8; 3],
    pub summed_rhs: u8,
    pub proved: bool,
}

const NAMES: [&str; 3] = ["i", "j", "k"];

fn conditions() -> Vec<Condition> {
    [(0, 1), (1, 2), (2, 0)]
        .into_iter()
        .map(|(a, b)| Condition {
            particles: (a, b),
            statement: format!(
                "exactly one of n^1_{a} - n^2_{a} and n^2_{b} - n^1_{b} is odd",
                a = NAMES[a],
                b = NAMES[b]
            ),
        })
        .collect()
}

/// Exhausts every parity assignment of the nine windings and shows the three
/// pairwise conditions cannot hold together.
pub fn impossibility_search() -> Certificate {
    let conds = conditions();
    let mut counts = [0usize; 8];
    for code in 0..512u16 {
        let d = ParityAssignment::from_code(code).differences();
        counts[(d[0] | d[1] << 1 | d[2] << 2) as usize] += 1;
    }
    let rows: Vec<CertificateRow> = (0..8u8)
        .map(|r| {
            let d = [r & 1, (r >> 1) & 1, (r >> 2) & 1];
            let conditions: Vec<bool> = conds.iter().map(|c| c.holds(d)).collect();
            CertificateRow {
                differences: d,
                assignments: counts[r as usize],
                satisfies_all: conditions.iter().all(|&b| b),
                conditions,
            }
        })
        .collect();
    let satisfying = rows.iter().filter(|r| r.satisfies_all).count();
    let relaxations = (0..conds.len())
        .map(|dropped| Relaxation {
            dropped,
            satisfying: rows
                .iter()
                .filter(|r| r.conditions.iter().enumerate().all(|(c, &ok)| c == dropped || ok))
                .map(|r| r.differences)
                .collect(),
        })
        .collect::<Vec<_>>();
    let mut summed_coefficients = [0u8; 3];
    let mut summed_rhs = 0u8;
    for c in &conds {
        summed_coefficients[c.particles.0] ^= 1;
        summed_coefficients[c.particles.1] ^= 1;
        summed_rhs ^= 1;
    }
    let proved = satisfying == 0
        && relaxations.iter().all(|r| !r.satisfying.is_empty())
        && summed_coefficients == [0; 3]
        && summed_rhs == 1;
    Certificate {
        conditions: conds,
        total_assignments: counts.iter().sum(),
        rows,
        satisfying,
        relaxations,
        summed_coefficients,
        summed_rhs,
        proved,
    }
}
