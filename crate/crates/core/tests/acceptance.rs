//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use permsym::csplab::{
    boson_anomaly_check, build_ruleset_scheme, four_fermion_breakdown, four_fermion_witness, impossibility_search,
    phase_table, scheme_search, DEFAULT_BUDGET,
};
use permsym::exactphase::{HalfInt, Phase, Rational};
use permsym::geometry::{canonical_geometry, check_transverse_sum, dependent_phi, GeometryError, Vec3};
use permsym::ranking::{closing_link_winding, rank_n_phi, winding_number, Rank0Azimuths, RankingScheme};
use permsym::statevec::{
    annotate, build_symmetric, exchange, highest_weight_state, odd_s_exclusion, CanonicalChoice, FrameKind, Kinematics,
    ParticleId, ParticleState, SymmetricState,
};
use permsym::tolerance::Tolerances;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

/// `(φ in turns, 2s, 2m)`.
fn state(particles: &[(Rational, i64, i64)], same_q: bool) -> SymmetricState {
    let ps = particles
        .iter()
        .enumerate()
        .map(|(i, &(phi, s, m))| {
            let kin = Kinematics::Angles { theta: 1.0, phi_turns: phi };
            let q = if same_q { "q".to_string() } else { format!("q{i}") };
            let st = ParticleState::new(q, kin, HalfInt::from_twice(s), HalfInt::from_twice(m), FrameKind::Canonical)
                .expect("valid spin pair");
            (format!("p{i}"), st)
        })
        .collect();
    build_symmetric(ps, FrameKind::Canonical, &CanonicalChoice::default(), &Tolerances::default()).expect("valid state")
}

fn sign_of(twice_s: i64) -> Phase {
    Phase::sign_power(twice_s)
}

fn random_phi(rng: &mut ChaCha8Rng) -> Rational {
    let d = rng.gen_range(1..=24);
    Rational::new(rng.gen_range(0..d), d)
}

fn random_spin(rng: &mut ChaCha8Rng, max_twice: i64) -> (i64, i64) {
    let s = rng.gen_range(0..=max_twice);
    (s, -s + 2 * rng.gen_range(0..=s))
}

fn two_particle_exchange(rng: &mut ChaCha8Rng) -> Outcome {
    let mut failures = 0;
    let mut ties = 0;
    for _ in 0..500 {
        let (si, mi) = random_spin(rng, 5);
        let (sj, mj) = random_spin(rng, 5);
        let (pi, pj) = (random_phi(rng), if rng.gen_bool(0.1) { Rational::new(0, 1) } else { random_phi(rng) });
        let pj = if rng.gen_bool(0.05) { pi } else { pj };
        // Which identity plays j (the ranked particle).
        let j_first = rng.gen_bool(0.5);
        let (id_i, id_j) = if j_first { (1, 0) } else { (0, 1) };
        let mut parts = vec![(Rational::new(0, 1), 0, 0); 2];
        parts[id_i] = (pi, si, mi);
        parts[id_j] = (pj, sj, mj);
        let s = state(&parts, false);
        let mut seqs = vec![Vec::new(), Vec::new()];
        seqs[id_j] = vec![id_i];
        let scheme = RankingScheme::new(seqs).unwrap();
        let (_, rep) = exchange(&annotate(&s, &scheme).unwrap(), ParticleId(0), ParticleId(1)).unwrap();
        if pi == pj {
            ties += 1;
        }
        // j precedes i by azimuth, ties broken by identity.
        let j_below = (pj, id_j) < (pi, id_i);
        let expected = if j_below { sign_of(sj) } else { sign_of(si) };
        if rep.exchange_phase != expected {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("500 configurations ({ties} azimuth ties), {failures} mismatches"))
}

fn pauli() -> Outcome {
    let mut fermions = 0;
    let mut bosons = 0;
    let mut wrong = 0;
    for twice_s in 0..=5i64 {
        for pick in 0..=twice_s {
            let m = -twice_s + 2 * pick;
            for phi in [Rational::new(0, 1), Rational::new(1, 3), Rational::new(5, 7)] {
                for ranked in 0..2usize {
                    let s = state(&[(phi, twice_s, m), (phi, twice_s, m)], true);
                    let mut seqs = vec![Vec::new(), Vec::new()];
                    seqs[ranked] = vec![1 - ranked];
                    let a = annotate(&s, &RankingScheme::new(seqs).unwrap()).unwrap();
                    let (_, rep) = exchange(&a, ParticleId(0), ParticleId(1)).unwrap();
                    let fermion = twice_s % 2 == 1;
                    if fermion {
                        fermions += 1;
                    } else {
                        bosons += 1;
                    }
                    if rep.vanishes != fermion {
                        wrong += 1;
                    }
                }
            }
        }
    }
    outcome(
        wrong == 0,
        format!("{fermions} identical-fermion pairs vanish, {bosons} identical-boson pairs do not; {wrong} wrong"),
    )
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `J₊` (acting on both spins) annihilates the highest-weight state: each
/// target component receives two contributions `±√x` that must cancel.
fn annihilated(twice_s: i64, twice_total: i64) -> bool {
    let coeffs = highest_weight_state(HalfInt::from_twice(twice_s), HalfInt::from_twice(twice_total)).unwrap();
    let norm: BigRational = coeffs.iter().map(|c| c.2.square.clone()).sum();
    if norm != big(1) {
        return false;
    }
    // ⟨m+1| J₊ |m⟩² = (s − m)(s + m + 1), in doubled units divided by 4.
    let raise = |twice_m: i64| big((twice_s - twice_m) * (twice_s + twice_m + 2)) / big(4);
    for w in coeffs.windows(2) {
        let (hi, lo) = (&w[0], &w[1]);
        // J₊ on spin 1 of `lo` and on spin 2 of `hi` both land on |m1_hi, m2_lo⟩.
        let from_lo = lo.2.square.clone() * raise(lo.0.twice());
        let from_hi = hi.2.square.clone() * raise(hi.1.twice());
        if from_lo != from_hi || (!from_lo.eq(&big(0)) && lo.2.sign == hi.2.sign) {
            return false;
        }
    }
    true
}

fn odd_s() -> Outcome {
    let mut ok = true;
    let mut lines = Vec::new();
    for twice_s in 1..=4i64 {
        let s = HalfInt::from_twice(twice_s);
        let got = odd_s_exclusion(s).unwrap();
        let expected: Vec<HalfInt> = (1..=twice_s).filter(|x| x % 2 == 1).map(HalfInt::from_int).collect();
        let ladder = (0..=2 * twice_s).step_by(2).all(|tt| annihilated(twice_s, tt));
        ok &= got == expected && ladder;
        lines.push(format!("s={s}: {{{}}}", got.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")));
    }
    outcome(ok, lines.join("; "))
}

fn three_fermion_cycle(rng: &mut ChaCha8Rng) -> Outcome {
    let mut failures = 0;
    let mut unsorted = 0;
    for _ in 0..100 {
        let parts: Vec<(Rational, i64, i64)> = (0..3)
            .map(|_| {
                let s = [1, 3, 5][rng.gen_range(0..3)];
                (random_phi(rng), s, -s + 2 * rng.gen_range(0..=s))
            })
            .collect();
        if !(parts[0].0 <= parts[1].0 && parts[1].0 <= parts[2].0) {
            unsorted += 1;
        }
        let s = state(&parts, false);
        let rules = build_ruleset_scheme(&s).unwrap();
        let t = phase_table(&annotate(&s, &rules.scheme).unwrap()).unwrap();
        let good =
            t.singles.iter().all(|e| e.phase == Phase::minus_one()) && t.doubles.iter().all(|d| d.net == Phase::one());
        if !good {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("100 configurations ({unsorted} unsorted inputs), {failures} failures"))
}

fn boson_anomaly() -> Outcome {
    let half = |n, d| Rational::new(n, d);
    let base = state(&[(half(0, 1), 0, 0), (half(1, 4), 1, 1), (half(1, 2), 2, -2)], false);
    let r = boson_anomaly_check(&base).unwrap();
    let first = r.middle_is_fermion && r.anomalous && r.phase == Phase::minus_one();
    let mut consistent = true;
    let mut flips = 0;
    for k in 0..16 {
        let rotated = base.rotated_canonical(Rational::new(k, 16) + Rational::new(1, 32));
        let rr = boson_anomaly_check(&rotated).unwrap();
        consistent &= rr.anomalous == rr.middle_is_fermion;
        if !rr.anomalous {
            flips += 1;
        }
    }
    let turned = boson_anomaly_check(&base.rotated_canonical(Rational::new(3, 8))).unwrap();
    let ok = first && consistent && !turned.anomalous && turned.phase == Phase::one() && flips > 0;
    outcome(
        ok,
        format!(
            "fermion middle: {}; rotated 3/8 turn: {}; {flips}/16 rotations put a boson in the middle",
            r.phase, turned.phase
        ),
    )
}

fn four_fermions() -> Outcome {
    let w = four_fermion_breakdown().unwrap();
    let mut ok = w.reproduces && w.conventional_violated && w.double_net == Phase::minus_one();
    for spins in [[1, 3, 1, 1], [3, 1, 3, 5], [1, 1, 5, 3]] {
        let w = four_fermion_witness(spins.map(HalfInt::from_twice)).unwrap();
        ok &= w.reproduces && w.conventional_violated;
    }
    let quad = state(
        &[
            (Rational::new(0, 1), 1, 1),
            (Rational::new(1, 4), 1, 1),
            (Rational::new(1, 2), 1, -1),
            (Rational::new(3, 4), 1, 1),
        ],
        true,
    );
    let rank1 = scheme_search(&quad, 1, DEFAULT_BUDGET).unwrap();
    ok &= rank1.hits.is_empty();
    let rank2 = scheme_search(&quad, 2, DEFAULT_BUDGET).unwrap();
    outcome(
        ok,
        format!(
            "i↔j {} then j↔k net {} (conventional {}); rank ≤ 1 search: {} of {} schemes pass (rank ≤ 2: {})",
            w.single_ij,
            w.double_net,
            w.conventional_double,
            rank1.hits.len(),
            rank1.candidates,
            rank2.hits.len()
        ),
    )
}

fn impossibility() -> (Outcome, Duration) {
    let start = Instant::now();
    let c = impossibility_search();
    let elapsed = start.elapsed();
    let ok = c.rows.len() == 8
        && c.satisfying == 0
        && c.relaxations.len() == 3
        && c.relaxations.iter().all(|r| !r.satisfying.is_empty())
        && elapsed < Duration::from_millis(10);
    (
        outcome(
            ok,
            format!(
                "{} rows, {} satisfying, relaxations satisfiable: {:?}",
                c.rows.len(),
                c.satisfying,
                c.relaxations.iter().map(|r| r.satisfying.len()).collect::<Vec<_>>()
            ),
        ),
        elapsed,
    )
}

fn geometry(rng: &mut ChaCha8Rng) -> Outcome {
    let tol = Tolerances::default();
    let mut worst_sum = 0.0f64;
    let mut worst_phi = 0.0f64;
    let mut done = 0;
    let mut resampled = 0;
    while done < 1000 {
        let n = rng.gen_range(2..=6);
        let momenta: Vec<Vec3> = (0..n)
            .map(|_| {
                let t = rng.gen_range(0.0..std::f64::consts::PI);
                let p = rng.gen_range(0.0..TAU);
                Vec3::from_spherical(t, p) * rng.gen_range(0.01..10.0)
            })
            .collect();
        let geo = match canonical_geometry(&momenta, None, 0.0, &tol) {
            Ok(g) => g,
            Err(_) => {
                resampled += 1;
                continue;
            }
        };
        worst_sum = worst_sum.max(check_transverse_sum(&momenta, &geo.axis));
        for i in 0..n {
            match dependent_phi(i, &geo.angles, &tol) {
                Ok(phi) => {
                    let d = (phi.radians() - geo.angles[i].phi.radians()).rem_euclid(TAU);
                    worst_phi = worst_phi.max(d.min(TAU - d));
                }
                Err(GeometryError::IndeterminatePhi { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
        done += 1;
    }
    outcome(
        worst_sum < 1e-9 && worst_phi < 1e-9,
        format!("1000 configurations ({resampled} degenerate draws resampled); max transverse residual {worst_sum:.2e}, max φ residual {worst_phi:.2e}"),
    )
}

/// Every weak ordering of `n` particles, as azimuths `rank/n` turns.
fn weak_orderings(n: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    let mut levels = vec![0usize; n];
    loop {
        let mut used: Vec<usize> = levels.clone();
        used.sort_unstable();
        used.dedup();
        if used.iter().enumerate().all(|(k, &l)| k == l) {
            out.push(levels.iter().map(|&l| Rational::new(l as i64, n as i64)).collect());
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            levels[k] += 1;
            if levels[k] < n {
                break;
            }
            levels[k] = 0;
            k += 1;
        }
    }
}

fn sequences(target: usize, n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for q in (0..n).filter(|&q| q != target && s.last() != Some(&q)) {
                let mut t = s.clone();
                t.push(q);
                next.push(t);
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

fn winding_oracle() -> (Outcome, String) {
    let orderings = weak_orderings(5);
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    let mut closing_disagree = 0u64;
    for phis in &orderings {
        let az = Rank0Azimuths::from_turns(phis);
        for t in 0..5 {
            for seq in sequences(t, 5, 4) {
                let (_, from_angles) = rank_n_phi(t, &seq, &az).unwrap();
                let direct = winding_number(t, &seq, &az).unwrap();
                checked += 1;
                if from_angles != direct {
                    mismatches += 1;
                }
                if closing_link_winding(t, &seq, &az).unwrap() != direct {
                    closing_disagree += 1;
                }
            }
        }
    }
    (
        outcome(
            mismatches == 0 && orderings.len() == 541,
            format!("{} orderings × 800 chains = {checked} cases, {mismatches} mismatches", orderings.len()),
        ),
        format!("closing-link closed form differs from the chain winding in {closing_disagree} of {checked} cases"),
    )
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let mut all = true;
    let mut report = |id: u32, name: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let mut o = f();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed >= limit {
                o.passed = false;
                o.detail.push_str(&format!("; exceeded {limit:?}"));
            }
        }
        all &= o.passed;
        println!(
            "{} [{id}] {name}: {} ({:.1} ms)",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64() * 1e3
        );
    };

    report(1, "two-particle exchange phase", Some(Duration::from_secs(1)), &mut || two_particle_exchange(&mut rng));
    report(2, "Pauli vanishing", None, &mut pauli);
    report(3, "odd total-spin exclusion", None, &mut odd_s);
    report(4, "three-fermion cyclic scheme", None, &mut || three_fermion_cycle(&mut rng));
    report(5, "boson anomaly", None, &mut boson_anomaly);
    report(6, "four-fermion breakdown", None, &mut four_fermions);
    let (imp, imp_time) = impossibility();
    report(7, "parity impossibility certificate", None, &mut || {
        let mut o = outcome(imp.passed, imp.detail.clone());
        o.detail.push_str(&format!("; search took {:.3} ms", imp_time.as_secs_f64() * 1e3));
        o
    });
    report(8, "geometry suite", Some(Duration::from_secs(5)), &mut || geometry(&mut rng));
    let mut info = String::new();
    report(9, "winding oracle equivalence", None, &mut || {
        let (o, i) = winding_oracle();
        info = i;
        o
    });
    println!("INFO {info}");

    if all {
        println!("all acceptance criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance FAILED");
        ExitCode::FAILURE
    }
}
