//! Exact exchange-phase bookkeeping for multi-particle spin states whose
//! descriptions carry an azimuthal ordering convention.

pub mod commands;
pub mod config;
pub mod csplab;
pub mod exactphase;
pub mod geometry;
pub mod ranking;
pub mod report;
pub mod statevec;
pub mod tolerance;

#[cfg(test)]
pub(crate) mod test_support {
    use crate::exactphase::{HalfInt, Rational};
    use crate::statevec::{build_symmetric, CanonicalChoice, FrameKind, Kinematics, ParticleState, SymmetricState};
    use crate::tolerance::Tolerances;

    /// Canonical-frame state with azimuths `n/d` turns and spins `2s`, each
    /// with `m = s`.
    pub fn angled_state(phis: &[(i64, i64)], twice_s: &[i64]) -> SymmetricState {
        let ps = phis
            .iter()
            .zip(twice_s)
            .enumerate()
            .map(|(i, (&(n, d), &s))| {
                let kin = Kinematics::Angles { theta: 1.0, phi_turns: Rational::new(n, d) };
                let s = HalfInt::from_twice(s);
                (format!("p{i}"), ParticleState::new("q", kin, s, s, FrameKind::Canonical).unwrap())
            })
            .collect();
        build_symmetric(ps, FrameKind::Canonical, &CanonicalChoice::default(), &Tolerances::default()).unwrap()
    }
}
