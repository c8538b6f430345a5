//! Agent factory keyed by name.
//!
//! Grammar (whitespace not allowed):
//!
//! ```text
//! spec    := "random" | "rs" | rhea | olmcts
//! rhea    := "rhea:" "P=" uint "," "L=" uint      (keys in any order)
//! olmcts  := "olmcts" [ ":" kv { "," kv } ]        kv := "depth=" uint | "c=" real
//! ```
//!
//! `olmcts` defaults to depth 10 and `c = sqrt(2)`. The budget is not part of
//! the spec; the harness supplies it per decision.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{olmcts_decide, random_decide, rhea_decide, AgentError, Decision, DecisionTrace, MctsConfig, RheaConfig};
use crate::engine::{ForwardModel, RngStream};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AgentSpec {
    Random,
    RandomSearch,
    Rhea { population: usize, length: usize },
    Olmcts { depth: usize, exploration: f64 },
}

impl AgentSpec {
    pub fn rhea(population: usize, length: usize) -> Self {
        AgentSpec::Rhea { population, length }
    }

    pub fn olmcts_default() -> Self {
        AgentSpec::Olmcts {
            depth: 10,
            exploration: std::f64::consts::SQRT_2,
        }
    }

    /// Individual length or playout depth; `None` for the random agent.
    pub fn horizon(&self) -> Option<usize> {
        match *self {
            AgentSpec::Random => None,
            AgentSpec::RandomSearch => Some(20),
            AgentSpec::Rhea { length, .. } => Some(length),
            AgentSpec::Olmcts { depth, .. } => Some(depth),
        }
    }

    pub fn rhea_config(&self, budget: u64) -> Option<RheaConfig> {
        match *self {
            AgentSpec::RandomSearch => Some(RheaConfig::random_search(budget)),
            AgentSpec::Rhea { population, length } => Some(RheaConfig::new(population, length, budget)),
            _ => None,
        }
    }

    pub fn decide<S: ForwardModel>(&self, root: &S, budget: u64, rng: &mut RngStream) -> Result<Decision, AgentError> {
        match *self {
            AgentSpec::Random => {
                if root.status().is_terminal() {
                    return Err(AgentError::TerminalRoot);
                }
                let action = random_decide(root, rng);
                Ok(Decision {
                    action,
                    trace: DecisionTrace {
                        budget,
                        chosen_action: action,
                        ..DecisionTrace::default()
                    },
                })
            }
            AgentSpec::RandomSearch | AgentSpec::Rhea { .. } => {
                let cfg = self.rhea_config(budget).expect("evolutionary agent");
                rhea_decide(root, &cfg, rng)
            }
            AgentSpec::Olmcts { depth, exploration } => {
                olmcts_decide(root, &MctsConfig::new(depth, exploration, budget), rng)
            }
        }
    }
}

impl fmt::Display for AgentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AgentSpec::Random => f.write_str("random"),
            AgentSpec::RandomSearch => f.write_str("rs"),
            AgentSpec::Rhea { population, length } => write!(f, "rhea:P={population},L={length}"),
            AgentSpec::Olmcts { depth, exploration } => write!(f, "olmcts:depth={depth},c={exploration}"),
        }
    }
}

impl FromStr for AgentSpec {
    type Err = AgentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let invalid = |reason: &str| AgentError::InvalidSpec {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let pairs = |args: &str| -> Result<Vec<(String, String)>, AgentError> {
            args.split(',')
                .map(|kv| {
                    kv.split_once('=')
                        .map(|(k, v)| (k.to_string(), v.to_string()))
                        .ok_or_else(|| invalid(&format!("expected key=value, got `{kv}`")))
                })
                .collect()
        };
        let uint = |v: &str, key: &str| -> Result<usize, AgentError> {
            match v.parse::<usize>() {
                Ok(x) if x >= 1 => Ok(x),
                _ => Err(invalid(&format!("{key} must be a positive integer"))),
            }
        };
        match (name, args) {
            ("random", None) => Ok(AgentSpec::Random),
            ("rs", None) => Ok(AgentSpec::RandomSearch),
            ("rhea", Some(args)) => {
                let (mut p, mut l) = (None, None);
                for (k, v) in pairs(args)? {
                    match k.as_str() {
                        "P" if p.is_none() => p = Some(uint(&v, "P")?),
                        "L" if l.is_none() => l = Some(uint(&v, "L")?),
                        _ => return Err(invalid(&format!("unexpected key `{k}`"))),
                    }
                }
                match (p, l) {
                    (Some(population), Some(length)) => Ok(AgentSpec::Rhea { population, length }),
                    _ => Err(invalid("rhea needs both P and L")),
                }
            }
            ("olmcts", args) => {
                let AgentSpec::Olmcts { mut depth, mut exploration } = AgentSpec::olmcts_default() else {
                    unreachable!()
                };
                let mut seen = (false, false);
                for (k, v) in args.map(pairs).transpose()?.unwrap_or_default() {
                    match k.as_str() {
                        "depth" if !seen.0 => {
                            depth = uint(&v, "depth")?;
                            seen.0 = true;
                        }
                        "c" if !seen.1 => {
                            exploration = match v.parse::<f64>() {
                                Ok(c) if c.is_finite() && c >= 0.0 => c,
                                _ => return Err(invalid("c must be a non-negative real")),
                            };
                            seen.1 = true;
                        }
                        _ => return Err(invalid(&format!("unexpected key `{k}`"))),
                    }
                }
                Ok(AgentSpec::Olmcts { depth, exploration })
            }
            _ => Err(invalid("unknown agent")),
        }
    }
}

impl Serialize for AgentSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AgentSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
