//! JSON particle configurations.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactphase::{format_rational, parse_rational, HalfInt, Rational};
use crate::geometry::Vec3;
use crate::ranking::RankingScheme;
use crate::statevec::{
    build_symmetric, CanonicalChoice, FrameKind, Kinematics, ParticleState, StateError, SymmetricState,
};
use crate::tolerance::Tolerances;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid config at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("duplicate particle id `{0}`")]
    DuplicateId(String),
    #[error("scheme refers to unknown particle id `{0}`")]
    UnknownId(String),
    #[error("particle `{id}`: {source}")]
    Particle { id: String, source: StateError },
    #[error("scheme: {0}")]
    Scheme(StateError),
    #[error(transparent)]
    State(#[from] StateError),
}

/// Exact rational written as `"p/q"` or an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Turns(pub Rational);

impl Serialize for Turns {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(self.0))
    }
}

impl<'de> Deserialize<'de> for Turns {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) => parse_rational(&t).map(Turns).map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(Turns(Rational::from_integer(n))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KinematicsSpec {
    Momentum([f64; 3]),
    Angles { theta: f64, phi_turns: Turns },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleSpec {
    pub id: String,
    #[serde(rename = "Q")]
    pub q: String,
    pub p: KinematicsSpec,
    pub s: HalfInt,
    pub m: HalfInt,
}

/// Explicit choice of the canonical frame's x axis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct FrameSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_axis: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation_turns: Option<Turns>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleConfig {
    pub particles: Vec<ParticleSpec>,
    /// Particle id to the ids of its predecessors, first to last.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_frame: Option<FrameSpec>,
    /// Frame the projections `m` refer to (default: aggregate).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<FrameKind>,
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub state: SymmetricState,
    pub scheme: Option<RankingScheme>,
    pub ids: Vec<String>,
}

impl Loaded {
    pub fn index_of(&self, id: &str) -> Result<usize, ConfigError> {
        self.ids.iter().position(|x| x == id).ok_or_else(|| ConfigError::UnknownId(id.to_string()))
    }

    /// A scheme as an id-keyed map, every particle listed.
    pub fn scheme_map(&self, scheme: &RankingScheme) -> BTreeMap<String, Vec<String>> {
        self.ids
            .iter()
            .enumerate()
            .map(|(x, id)| (id.clone(), scheme.sequence(x).iter().map(|&q| self.ids[q].clone()).collect()))
            .collect()
    }
}

impl ParticleConfig {
    pub fn from_json_str(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::from_json_str(&text)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Validates the configuration and builds its symmetric state.
    pub fn build(&self, tol: &Tolerances) -> Result<Loaded, ConfigError> {
        let mut seen = HashMap::new();
        for (x, p) in self.particles.iter().enumerate() {
            if seen.insert(p.id.as_str(), x).is_some() {
                return Err(ConfigError::DuplicateId(p.id.clone()));
            }
        }
        let frame = self.frame.unwrap_or_default();
        let particles = self
            .particles
            .iter()
            .map(|p| {
                let kin = match &p.p {
                    KinematicsSpec::Momentum(v) => Kinematics::Momentum(Vec3::new(v[0], v[1], v[2])),
                    KinematicsSpec::Angles { theta, phi_turns } => {
                        Kinematics::Angles { theta: *theta, phi_turns: phi_turns.0 }
                    }
                };
                ParticleState::new(p.q.clone(), kin, p.s, p.m, frame)
                    .map(|st| (p.id.clone(), st))
                    .map_err(|source| ConfigError::Particle { id: p.id.clone(), source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let choice = self
            .canonical_frame
            .as_ref()
            .map(|f| CanonicalChoice {
                reference: f.x_axis.map(|v| Vec3::new(v[0], v[1], v[2])),
                rotation_turns: f.rotation_turns.map_or(Rational::from_integer(0), |t| t.0),
            })
            .unwrap_or_default();
        let state = build_symmetric(particles, frame, &choice, tol)?;

        let scheme = match &self.scheme {
            None => None,
            Some(map) => {
                let mut sequences = vec![Vec::new(); self.particles.len()];
                for (target, preds) in map {
                    let t = *seen.get(target.as_str()).ok_or_else(|| ConfigError::UnknownId(target.clone()))?;
                    sequences[t] = preds
                        .iter()
                        .map(|q| seen.get(q.as_str()).copied().ok_or_else(|| ConfigError::UnknownId(q.clone())))
                        .collect::<Result<_, _>>()?;
                }
                Some(RankingScheme::new(sequences).map_err(|e| ConfigError::Scheme(e.into()))?)
            }
        };
        let ids = self.particles.iter().map(|p| p.id.clone()).collect();
        Ok(Loaded { state, scheme, ids })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAIR: &str = r#"{
        "particles": [
            {"id": "a", "Q": "e", "p": {"theta": 1.0, "phi_turns": "1/10"}, "s": "1/2", "m": "1/2"},
            {"id": "b", "Q": "e", "p": {"theta": 2.0, "phi_turns": 0}, "s": "1/2", "m": "-1/2"}
        ],
        "scheme": {"b": ["a"]}
    }"#;

    #[test]
    fn parses_and_builds() {
        let c = ParticleConfig::from_json_str(PAIR).unwrap();
        let l = c.build(&Tolerances::default()).unwrap();
        assert_eq!(l.scheme.unwrap().sequences(), &[vec![], vec![0]]);
        assert_eq!(l.state.members()[1].angles.phi.exact(), Some(Rational::from_integer(0)));
        assert_eq!(ParticleConfig::from_json_str(&c.to_json_string()).unwrap(), c);
    }

    #[test]
    fn names_the_bad_particle() {
        let text = PAIR.replace(r#""m": "-1/2""#, r#""m": "3/2""#);
        let err = ParticleConfig::from_json_str(&text).unwrap().build(&Tolerances::default()).unwrap_err();
        assert!(err.to_string().starts_with("particle `b`"), "{err}");
    }

    #[test]
    fn reports_position_and_ids() {
        let err = ParticleConfig::from_json_str("{\n \"particles\": [,]}").unwrap_err();
        assert!(matches!(err, ConfigError::Parse { line: 2, .. }));
        let text = PAIR.replace(r#"{"b": ["a"]}"#, r#"{"b": ["z"]}"#);
        let err = ParticleConfig::from_json_str(&text).unwrap().build(&Tolerances::default()).unwrap_err();
        assert!(matches!(err, ConfigError::UnknownId(ref z) if z == "z"));
        let text = PAIR.replace(r#""id": "b""#, r#""id": "a""#);
        let err = ParticleConfig::from_json_str(&text).unwrap().build(&Tolerances::default()).unwrap_err();
        assert!(matches!(err, ConfigError::DuplicateId(_)));
    }
}
