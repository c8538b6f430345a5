use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::HarnessError;
use crate::agents::AgentSpec;
use crate::games::{GameKind, Nature, LEVELS_PER_GAME};

pub const PAPER_POPULATIONS: [usize; 7] = [1, 2, 5, 7, 10, 13, 20];
pub const PAPER_LENGTHS: [usize; 7] = [6, 8, 10, 12, 14, 16, 20];

/// Which bundled games an experiment plays.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum GameSelector {
    #[default]
    All,
    Deterministic,
    Stochastic,
    List(Vec<GameKind>),
}

impl GameSelector {
    pub fn games(&self) -> Vec<GameKind> {
        let by_nature = |n: Nature| GameKind::ALL.into_iter().filter(|k| k.nature() == n).collect();
        match self {
            GameSelector::All => GameKind::ALL.to_vec(),
            GameSelector::Deterministic => by_nature(Nature::Deterministic),
            GameSelector::Stochastic => by_nature(Nature::Stochastic),
            GameSelector::List(list) => list.clone(),
        }
    }
}

impl Serialize for GameSelector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            GameSelector::All => s.serialize_str("all"),
            GameSelector::Deterministic => s.serialize_str("deterministic"),
            GameSelector::Stochastic => s.serialize_str("stochastic"),
            GameSelector::List(list) => list.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for GameSelector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Word(String),
            List(Vec<String>),
        }
        let parse_list = |ids: Vec<String>| {
            ids.iter()
                .map(|id| GameKind::from_id(id).map_err(serde::de::Error::custom))
                .collect::<Result<Vec<_>, _>>()
        };
        match Raw::deserialize(d)? {
            Raw::Word(w) => match w.as_str() {
                "all" => Ok(GameSelector::All),
                "deterministic" => Ok(GameSelector::Deterministic),
                "stochastic" => Ok(GameSelector::Stochastic),
                id => Ok(GameSelector::List(parse_list(vec![id.to_string()])?)),
            },
            Raw::List(ids) => Ok(GameSelector::List(parse_list(ids)?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub populations: Vec<usize>,
    pub lengths: Vec<usize>,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self {
            populations: PAPER_POPULATIONS.to_vec(),
            lengths: PAPER_LENGTHS.to_vec(),
        }
    }
}

fn default_name() -> String {
    "experiment".into()
}
fn default_levels() -> Vec<usize> {
    (0..LEVELS_PER_GAME).collect()
}
fn default_repeats() -> u32 {
    20
}
fn default_budget() -> u64 {
    480
}
fn default_parallelism() -> usize {
    1
}

/// Experiment description, usually read from a TOML file.
///
/// ```toml
/// name = "paper"
/// agents = ["rs", "olmcts:depth=10,c=1.414"]
/// games = "all"            # or "deterministic", "stochastic", ["invaders", ...]
/// levels = [0, 1, 2, 3, 4]
/// repeats = 20
/// budget = 480
/// master_seed = 2024
/// parallelism = 8
/// budgets = [480, 960, 1440, 1920]   # used by `budget-study`
///
/// [sweep]                  # used by `sweep`
/// populations = [1, 2, 5, 7, 10, 13, 20]
/// lengths = [6, 8, 10, 12, 14, 16, 20]
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_name")]
    pub name: String,
    #[serde(default)]
    pub agents: Vec<AgentSpec>,
    #[serde(default)]
    pub games: GameSelector,
    #[serde(default = "default_levels")]
    pub levels: Vec<usize>,
    #[serde(default = "default_repeats")]
    pub repeats: u32,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_parallelism")]
    pub parallelism: usize,
    #[serde(default)]
    pub sweep: Option<SweepGrid>,
    #[serde(default)]
    pub budgets: Option<Vec<u64>>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            name: default_name(),
            agents: Vec::new(),
            games: GameSelector::All,
            levels: default_levels(),
            repeats: default_repeats(),
            budget: default_budget(),
            master_seed: 0,
            parallelism: default_parallelism(),
            sweep: None,
            budgets: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let fail = |m: &str| Err(HarnessError::Config(m.to_string()));
        if self.repeats < 1 {
            return fail("repeats must be at least 1");
        }
        if self.budget < 1 {
            return fail("budget must be at least 1");
        }
        if self.levels.is_empty() || self.levels.iter().any(|&l| l >= LEVELS_PER_GAME) {
            return fail("levels must be a non-empty subset of 0..=4");
        }
        if self.games.games().is_empty() {
            return fail("no games selected");
        }
        if let Some(grid) = &self.sweep {
            if grid.populations.is_empty() || grid.lengths.is_empty() {
                return fail("sweep sets must be non-empty");
            }
            if grid.populations.contains(&0) || grid.lengths.contains(&0) {
                return fail("sweep values must be positive");
            }
        }
        if let Some(b) = &self.budgets {
            if b.is_empty() || b.contains(&0) {
                return fail("budgets must be non-empty and positive");
            }
        }
        Ok(())
    }

    /// CI profile: two repeats on the first two levels.
    pub fn smoke(mut self) -> Self {
        self.repeats = 2;
        self.levels = vec![0, 1];
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_protocol() {
        let cfg = ExperimentConfig::from_toml("").unwrap();
        assert_eq!(cfg.levels, vec![0, 1, 2, 3, 4]);
        assert_eq!((cfg.repeats, cfg.budget), (20, 480));
        assert_eq!(cfg.games.games().len(), 6);
    }

    #[test]
    fn full_file() {
        let cfg = ExperimentConfig::from_toml(
            r#"
            name = "t"
            agents = ["rs", "rhea:P=5,L=10"]
            games = ["invaders", "maze_escape"]
            levels = [0]
            repeats = 3
            master_seed = 9
            budgets = [480, 960]
            [sweep]
            populations = [1, 2]
            lengths = [6]
            "#,
        )
        .unwrap();
        assert_eq!(cfg.agents.len(), 2);
        assert_eq!(cfg.games.games(), vec![GameKind::Invaders, GameKind::MazeEscape]);
        assert_eq!(cfg.sweep.unwrap().populations, vec![1, 2]);
    }

    #[test]
    fn selectors() {
        let det = ExperimentConfig::from_toml("games = \"deterministic\"").unwrap();
        assert!(det.games.games().iter().all(|k| k.nature() == Nature::Deterministic));
        assert_eq!(det.games.games().len(), 3);
    }

    #[test]
    fn rejects_bad_configs() {
        for bad in [
            "repeats = 0",
            "budget = 0",
            "levels = [7]",
            "agents = [\"nope\"]",
            "games = [\"nosuchgame\"]",
            "colour = 3",
            "[sweep]\npopulations = []\nlengths = [6]",
        ] {
            assert!(ExperimentConfig::from_toml(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn smoke_profile() {
        let cfg = ExperimentConfig::default().smoke();
        assert_eq!((cfg.repeats, cfg.levels.clone()), (2, vec![0, 1]));
    }
}
