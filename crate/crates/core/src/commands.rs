//! Subcommand implementations producing [`Report`]s.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde_json::{json, Value};
use thiserror::Error;

use crate::config::{ConfigError, KinematicsSpec, Loaded, ParticleConfig};
use crate::csplab::{
    boson_anomaly_check, build_ruleset_scheme, cyclic_scheme, impossibility_search, phase_table, scheme_search,
    sorted_identities, CspError,
};
use crate::exactphase::{winding_phase, Phase};
use crate::geometry::{
    aggregate_axis, aggregate_frame, check_transverse_sum, dependent_phi, helicity_frame, GeometryError, Vec3,
};
use crate::ranking::{rank_n_phi, winding_number, RankingError, RankingScheme};
use crate::report::Report;
use crate::statevec::{
    annotate, build_symmetric, exchange, AnnotatedState, CanonicalChoice, FrameKind, ParticleId, StateError,
};
use crate::tolerance::Tolerances;

/// Maximum number of search hits listed in a report.
pub const MAX_LISTED_HITS: usize = 200;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Csp(#[from] CspError),
    #[error("this command needs --config")]
    MissingConfig,
    #[error("--pair needs two distinct particle ids, got `{0}`")]
    BadPair(String),
}

fn state_exit_code(e: &StateError) -> i32 {
    match e {
        StateError::Geometry(_) | StateError::PolarDegenerate { .. } => 3,
        StateError::Ranking(RankingError::InexactTie { .. }) => 3,
        _ => 2,
    }
}

impl CliError {
    /// 2 validation, 3 degenerate geometry, 4 search budget. A completed
    /// run whose checks failed exits with 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::State(e) => state_exit_code(e),
            CliError::Config(ConfigError::State(e)) | CliError::Config(ConfigError::Particle { source: e, .. }) => {
                state_exit_code(e)
            }
            CliError::Csp(CspError::State(e)) => state_exit_code(e),
            CliError::Csp(CspError::Ranking(RankingError::InexactTie { .. })) => 3,
            CliError::Csp(CspError::BudgetExceeded { .. } | CspError::SearchTooLarge { .. }) => 4,
            _ => 2,
        }
    }
}

fn inputs(config: Option<&ParticleConfig>, tol: &Tolerances, extra: Value) -> Value {
    let mut v = json!({ "tolerance": tol.geometric });
    if let Some(c) = config {
        v["config"] = serde_json::to_value(c).expect("config serializes");
    }
    if let Value::Object(map) = extra {
        for (k, x) in map {
            v[k] = x;
        }
    }
    v
}

fn ids(loaded: &Loaded, list: &[ParticleId]) -> Vec<String> {
    list.iter().map(|p| loaded.ids[p.0].clone()).collect()
}

fn by_id(loaded: &Loaded, values: &[i64]) -> BTreeMap<String, i64> {
    loaded.ids.iter().cloned().zip(values.iter().copied()).collect()
}

fn check(name: &str, passed: bool, residual: Option<f64>, detail: impl Into<String>) -> Value {
    json!({ "name": name, "passed": passed, "residual": residual, "detail": detail.into() })
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Phase relation, exchange involution and winding bookkeeping for every
/// pair of an annotated state.
fn exchange_checks(state: &AnnotatedState) -> Result<(bool, bool, bool), CliError> {
    let n = state.base().len();
    let m: Vec<_> = state.base().members().iter().map(|x| x.state.m).collect();
    let mut involution = true;
    let mut winding_rule = true;
    let mut signs = true;
    for a in 0..n {
        for b in a + 1..n {
            let (next, rep) = exchange(state, ParticleId(a), ParticleId(b))?;
            let (back, rep2) = exchange(&next, ParticleId(a), ParticleId(b))?;
            involution &= back == *state && rep.exchange_phase * rep2.exchange_phase == Phase::one();
            signs &= rep.exchange_phase.sign().is_some();
            let predicted: Phase = rep.winding_deltas.0.iter().zip(&m).map(|(&d, &mm)| winding_phase(mm, d)).product();
            winding_rule &= predicted == rep.exchange_phase;
        }
    }
    Ok((involution, winding_rule, signs))
}

pub fn cmd_verify(config: &ParticleConfig, tol: &Tolerances) -> Result<Report, CliError> {
    let loaded = config.build(tol)?;
    let state = &loaded.state;
    let g = tol.geometric;
    let mut checks = Vec::new();

    let momenta: Option<Vec<Vec3>> = config
        .particles
        .iter()
        .map(|p| match p.p {
            KinematicsSpec::Momentum(v) => Some(Vec3::new(v[0], v[1], v[2])),
            KinematicsSpec::Angles { .. } => None,
        })
        .collect();
    if let Some(momenta) = &momenta {
        let k = aggregate_axis(momenta, tol).map_err(StateError::from)?;
        let r = check_transverse_sum(momenta, &k);
        checks.push(check("lab_transverse_sum", r < g, Some(r), "|Σ transverse parts of p̂ about k|"));
        let geo = state.geometry().expect("momentum configs carry geometry");
        let r = geo.frame.orthonormality_residual().max(geo.frame.handedness_residual());
        checks.push(check("canonical_frame_orthonormal", r < g, Some(r), "right-handed orthonormal basis"));
        let r = (geo.frame.z_axis - k.normalized(0.0).unwrap_or(Vec3::Z)).norm();
        checks.push(check("canonical_z_along_k", r < g, Some(r), "canonical z equals k̂"));
        let frames = momenta
            .iter()
            .map(|p| match state.frame() {
                FrameKind::Helicity => helicity_frame(p, &k, tol).map(Some),
                FrameKind::Aggregate => aggregate_frame(p, &k, tol).map(Some),
                FrameKind::Canonical => Ok(None),
            })
            .collect::<Result<Vec<_>, GeometryError>>()
            .map_err(StateError::from)?;
        let r = frames
            .iter()
            .flatten()
            .map(|f| f.orthonormality_residual().max(f.handedness_residual()))
            .fold(0.0, f64::max);
        checks.push(check("particle_frames_orthonormal", r < g, Some(r), format!("{:?} frames", state.frame())));
    }

    let angles: Vec<_> = state.members().iter().map(|m| m.angles).collect();
    let directions: Vec<Vec3> = angles.iter().map(|a| a.direction()).collect();
    let r = check_transverse_sum(&directions, &Vec3::Z);
    checks.push(check("canonical_transverse_sum", r < g, Some(r), "|Σ sinθ (cos φ, sin φ)|"));
    let mut worst = 0.0f64;
    let mut indeterminate = Vec::new();
    for i in 0..angles.len() {
        match dependent_phi(i, &angles, tol) {
            Ok(phi) => worst = worst.max(angle_gap(phi.radians(), angles[i].phi.radians())),
            Err(GeometryError::IndeterminatePhi { .. }) => indeterminate.push(loaded.ids[i].clone()),
            Err(e) => return Err(StateError::from(e).into()),
        }
    }
    let detail = if indeterminate.is_empty() {
        "each φ recovered from the others".to_string()
    } else {
        format!("indeterminate for {}", indeterminate.join(", "))
    };
    checks.push(check("dependent_phi", worst < g, Some(worst), detail));

    let scheme = loaded.scheme.clone().unwrap_or_else(|| RankingScheme::rank0(state.len()));
    let az = state.phi0();
    let mut oracle = true;
    for t in 0..scheme.len() {
        let seq = scheme.sequence(t);
        if !seq.is_empty() {
            let (_, from_angles) = rank_n_phi(t, seq, &az).map_err(StateError::from)?;
            oracle &= from_angles == winding_number(t, seq, &az).map_err(StateError::from)?;
        }
    }
    checks.push(check("winding_oracle", oracle, None, "order-bit windings equal angle-difference windings"));

    let annotated = annotate(state, &scheme)?;
    let windings = annotated.windings_by_identity();
    let recomputed: Phase =
        state.members().iter().zip(&windings.0).map(|(m, &n)| winding_phase(m.state.m, n)).product();
    checks.push(check("annotation_phase", recomputed == annotated.phase(), None, "Π e^{i2π m N}"));
    let (involution, winding_rule, signs) = exchange_checks(&annotated)?;
    checks.push(check("exchange_sign", signs, None, "every exchange phase is ±1"));
    checks.push(check("exchange_involution", involution, None, "repeating an exchange restores the state"));
    checks.push(check("exchange_winding_rule", winding_rule, None, "phase = Π e^{i2π m ΔN}"));

    let mut reversed: Vec<_> = state.members().iter().map(|m| (m.label.clone(), m.state.clone())).collect();
    reversed.reverse();
    let choice = CanonicalChoice {
        reference: config.canonical_frame.as_ref().and_then(|f| f.x_axis).map(|v| Vec3::new(v[0], v[1], v[2])),
        rotation_turns: config
            .canonical_frame
            .as_ref()
            .and_then(|f| f.rotation_turns)
            .map_or(num_rational::Rational64::from_integer(0), |t| t.0),
    };
    let rebuilt = build_symmetric(reversed, state.frame(), &choice, tol)?;
    checks.push(check("order_independence", rebuilt == *state, None, "reversed input gives the same state"));

    let canonical_phase = state.to_canonical().ok().map(|(_, p)| p);
    let passed = checks.iter().all(|c| c["passed"] == Value::Bool(true));
    let results = json!({
        "checks": checks,
        "angles": state.members().iter().map(|m| json!({
            "id": m.label,
            "theta": m.angles.theta,
            "phi_turns": m.angles.phi.to_string(),
        })).collect::<Vec<_>>(),
        "scheme": loaded.scheme_map(&scheme),
        "windings": by_id(&loaded, &windings.0),
        "annotation_phase": annotated.phase(),
        "canonical_phase": canonical_phase,
    });
    Ok(Report::new("verify", inputs(Some(config), tol, json!({})), results, passed))
}

pub fn cmd_exchange(config: &ParticleConfig, a: &str, b: &str, tol: &Tolerances) -> Result<Report, CliError> {
    if a == b {
        return Err(CliError::BadPair(format!("{a},{b}")));
    }
    let loaded = config.build(tol)?;
    let (ia, ib) = (loaded.index_of(a)?, loaded.index_of(b)?);
    let scheme = loaded.scheme.clone().unwrap_or_else(|| RankingScheme::rank0(loaded.state.len()));
    let annotated = annotate(&loaded.state, &scheme)?;
    let (next, rep) = exchange(&annotated, ParticleId(ia), ParticleId(ib))?;
    let results = json!({
        "pair": [a, b],
        "scheme": loaded.scheme_map(&scheme),
        "phase_before": annotated.phase(),
        "phase_after": next.phase(),
        "exchange_phase": rep.exchange_phase,
        "windings_before": by_id(&loaded, &annotated.windings_by_identity().0),
        "windings_after": by_id(&loaded, &next.windings_by_identity().0),
        "winding_deltas": by_id(&loaded, &rep.winding_deltas.0),
        "third_party_affected": ids(&loaded, &rep.third_party_affected),
        "vanishes": rep.vanishes,
    });
    let passed = rep.exchange_phase.sign().is_some();
    Ok(Report::new("exchange", inputs(Some(config), tol, json!({ "pair": [a, b] })), results, passed))
}

pub fn cmd_csp(config: &ParticleConfig, tol: &Tolerances) -> Result<Report, CliError> {
    let loaded = config.build(tol)?;
    let state = &loaded.state;
    let order = sorted_identities(state)?;
    let fermions: Vec<ParticleId> =
        order.iter().copied().filter(|id| state.members()[id.0].state.is_fermion()).collect();
    let (scheme, source) = match &loaded.scheme {
        Some(s) => (s.clone(), "config"),
        None => match build_ruleset_scheme(state) {
            Ok(r) => (r.scheme, "rules"),
            Err(CspError::TooManyFermions { .. }) => (cyclic_scheme(state.len(), &fermions)?, "fermion_cycle"),
            Err(e) => return Err(e.into()),
        },
    };
    let annotated = annotate(state, &scheme)?;
    let table = phase_table(&annotated)?;
    let consistent = table.doubles.iter().all(|d| d.net == d.first_phase * d.second_phase);
    let pair = |p: (ParticleId, ParticleId)| [loaded.ids[p.0 .0].clone(), loaded.ids[p.1 .0].clone()];
    let anomaly = if state.len() == 3 && fermions.len() == 1 {
        let r = boson_anomaly_check(state)?;
        Some(json!({
            "middle": loaded.ids[r.middle.0],
            "middle_is_fermion": r.middle_is_fermion,
            "bosons": pair(r.bosons),
            "phase": r.phase,
            "anomalous": r.anomalous,
        }))
    } else {
        None
    };
    let results = json!({
        "scheme_source": source,
        "scheme": loaded.scheme_map(&scheme),
        "order": ids(&loaded, &order),
        "fermions": ids(&loaded, &fermions),
        "annotation_phase": annotated.phase(),
        "singles": table.singles.iter().map(|e| json!({
            "pair": pair(e.pair),
            "kind": e.kind,
            "phase": e.phase,
            "third_party_affected": ids(&loaded, &e.third_party_affected),
        })).collect::<Vec<_>>(),
        "doubles": table.doubles.iter().map(|d| json!({
            "first": pair(d.first),
            "second": pair(d.second),
            "first_phase": d.first_phase,
            "second_phase": d.second_phase,
            "net": d.net,
        })).collect::<Vec<_>>(),
        "conventional": table.conventional,
        "boson_anomaly": anomaly,
    });
    Ok(Report::new("csp", inputs(Some(config), tol, json!({})), results, consistent))
}

pub fn cmd_impossibility(tol: &Tolerances) -> Result<Report, CliError> {
    let cert = impossibility_search();
    let passed = cert.proved;
    let results = serde_json::to_value(&cert).expect("certificate serializes");
    Ok(Report::new("impossibility", inputs(None, tol, json!({})), results, passed))
}

pub fn cmd_search(config: &ParticleConfig, max_rank: usize, budget: u64, tol: &Tolerances) -> Result<Report, CliError> {
    let loaded = config.build(tol)?;
    let r = scheme_search(&loaded.state, max_rank, budget)?;
    let hits: Vec<Value> = r
        .hits
        .iter()
        .take(MAX_LISTED_HITS)
        .map(|h| json!({ "scheme": loaded.scheme_map(&h.scheme), "fermion_boson_stable": h.fermion_boson_stable }))
        .collect();
    let results = json!({
        "particles": r.particles,
        "max_rank": r.max_rank,
        "candidates": r.candidates,
        "raw_passing": r.raw_passing,
        "hit_count": r.hits.len(),
        "any_fermion_boson_stable": r.any_fermion_boson_stable,
        "listed": hits.len(),
        "hits": hits,
    });
    let extra = json!({ "max_rank": max_rank, "budget": budget });
    Ok(Report::new("search", inputs(Some(config), tol, extra), results, true))
}
