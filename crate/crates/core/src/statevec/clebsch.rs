//! Two-spin coupling for identical particles, built from the ladder
//! recursion so no tabulated coefficients are involved.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::StateError;
use crate::exactphase::{winding_phase, HalfInt};

/// Largest `2s` accepted by the coupling routines.
pub const MAX_TWICE_SPIN: i64 = 40;

/// `sign · √square`, with `square ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSqrt {
    pub sign: i8,
    pub square: BigRational,
}

impl SignedSqrt {
    pub fn value(&self) -> f64 {
        let n: f64 = self.square.numer().to_string().parse().unwrap_or(f64::NAN);
        let d: f64 = self.square.denom().to_string().parse().unwrap_or(f64::NAN);
        f64::from(self.sign) * (n / d).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.square.is_zero()
    }
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn check_spins(s: HalfInt, total: HalfInt) -> Result<(), StateError> {
    if s.twice() < 0 || s.twice() > MAX_TWICE_SPIN {
        return Err(StateError::SpinTooLarge(s));
    }
    if !total.is_integer() || total.twice() < 0 || total.twice() > 2 * s.twice() {
        return Err(StateError::Spin(crate::exactphase::HalfIntError::ProjectionOutOfRange {
            s: HalfInt::from_twice(2 * s.twice()),
            m: total,
        }));
    }
    Ok(())
}

/// Coefficients `⟨s m₁; s m₂ | S S⟩` of the highest-weight state of total
/// spin `S` built from two spins `s`, as `(m₁, m₂, c)` with `m₁` descending.
/// Fixed by normalisation and a positive coefficient at `m₁ = s`.
pub fn highest_weight_state(s: HalfInt, total: HalfInt) -> Result<Vec<(HalfInt, HalfInt, SignedSqrt)>, StateError> {
    check_spins(s, total)?;
    let ts = s.twice();
    let tt = total.twice();
    // Work in twice-units: m₁ runs from s down to S − s.
    let mut squares = vec![BigRational::one()];
    let mut signs = vec![1i8];
    let mut mu = ts;
    while mu - 2 >= tt - ts {
        // c(μ−1)² = c(μ)² (s−S+μ)(s+S−μ+1) / ((s−μ+1)(s+μ)), all doubled.
        let num = (ts - tt + mu) * (ts + tt - mu + 2);
        let den = (ts - mu + 2) * (ts + mu);
        let prev = squares.last().unwrap().clone();
        squares.push(prev * big(num) / big(den));
        signs.push(-signs.last().unwrap());
        mu -= 2;
    }
    let norm: BigRational = squares.iter().cloned().fold(BigRational::zero(), |a, b| a + b);
    Ok(squares
        .into_iter()
        .zip(signs)
        .enumerate()
        .map(|(k, (sq, sign))| {
            let m1 = HalfInt::from_twice(ts - 2 * k as i64);
            (m1, total - m1, SignedSqrt { sign, square: sq / norm.clone() })
        })
        .collect())
}

/// `ε` with `⟨s m₂; s m₁ | S S⟩ = ε ⟨s m₁; s m₂ | S S⟩` for every component.
pub fn exchange_symmetry(s: HalfInt, total: HalfInt) -> Result<i8, StateError> {
    let coeffs = highest_weight_state(s, total)?;
    let n = coeffs.len();
    let mut eps = None;
    for k in 0..n {
        let (a, b) = (&coeffs[k].2, &coeffs[n - 1 - k].2);
        debug_assert_eq!(a.square, b.square);
        let e = a.sign * b.sign;
        match eps {
            None => eps = Some(e),
            Some(prev) => debug_assert_eq!(prev, e),
        }
    }
    Ok(eps.unwrap_or(1))
}

/// Total spins `S` that two particles of spin `s` in the same spatial state
/// cannot couple to: the coupled state's exchange symmetry contradicts the
/// phase acquired by exchanging the two descriptions.
pub fn odd_s_exclusion(s: HalfInt) -> Result<Vec<HalfInt>, StateError> {
    if s.twice() < 0 || s.twice() > MAX_TWICE_SPIN {
        return Err(StateError::SpinTooLarge(s));
    }
    let mut forbidden = Vec::new();
    for tt in (0..=2 * s.twice()).step_by(2) {
        let total = HalfInt::from_twice(tt);
        let eps = exchange_symmetry(s, total)?;
        let allowed = highest_weight_state(s, total)?.iter().all(|(m1, _, _)| {
            // Swapping the two descriptions on a rank-1 pair with a tie winds
            // the first particle once.
            winding_phase(*m1, 1).sign() == Some(eps)
        });
        if !allowed {
            forbidden.push(total);
        }
    }
    Ok(forbidden)
}

impl SignedSqrt {
    pub fn is_negative(&self) -> bool {
        self.sign < 0 && self.square.is_positive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn singlet_and_triplet() {
        let singlet = highest_weight_state(h(1), h(0)).unwrap();
        assert_eq!(singlet.len(), 2);
        assert_eq!(singlet[0].2.square, BigRational::new(1.into(), 2.into()));
        assert_eq!((singlet[0].2.sign, singlet[1].2.sign), (1, -1));
        assert_eq!(exchange_symmetry(h(1), h(0)).unwrap(), -1);
        assert_eq!(exchange_symmetry(h(1), h(2)).unwrap(), 1);
    }

    #[test]
    fn exclusion_lists() {
        let f = |t| odd_s_exclusion(h(t)).unwrap();
        assert_eq!(f(1), vec![h(2)]);
        assert_eq!(f(2), vec![h(2)]);
        assert_eq!(f(3), vec![h(2), h(6)]);
        assert_eq!(f(4), vec![h(2), h(6)]);
        assert_eq!(f(0), vec![]);
    }

    #[test]
    fn symmetry_alternates_with_total_spin() {
        for ts in 0..=8 {
            for tt in (0..=2 * ts).step_by(2) {
                let expect = if (2 * ts - tt) / 2 % 2 == 0 { 1 } else { -1 };
                assert_eq!(exchange_symmetry(h(ts), h(tt)).unwrap(), expect, "2s={ts} 2S={tt}");
            }
        }
    }
}
