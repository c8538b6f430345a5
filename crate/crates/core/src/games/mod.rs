//! Bundled corpus of six grid games, five levels each.
//!
//! Every game shares one state type, [`GridState`]: a static terrain grid, an
//! avatar, and a list of sprites updated in stable id order. Within a tick the
//! update order is fixed for all games: avatar action, projectiles, NPCs,
//! collisions, spawns, end conditions, then the tick counter and timeout.
//! Collisions fire on cell coincidence after movement and also when two
//! movers swap cells.
//!
//! Rule tables live in `docs/games.md`.

mod butterfly_catch;
mod corridor_race;
mod invaders;
mod level;
mod maze_escape;
mod missile_defense;
mod state;
mod zombie_survival;

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{Action, ActionSet};

pub use level::{parse_level, LevelFile, LevelParams};
pub use state::{Avatar, Cell, Counters, GridState, Pos, Sprite, SpriteKind};

pub const LEVELS_PER_GAME: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Nature {
    Deterministic,
    Stochastic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scoring {
    Binary,
    Incremental,
    Discontinuous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TimeoutRule {
    TimeoutWin,
    TimeoutLoss,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameKind {
    CorridorRace,
    MissileDefense,
    MazeEscape,
    Invaders,
    ButterflyCatch,
    ZombieSurvival,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("unknown game `{0}`")]
    UnknownGame(String),
    #[error("game `{game}` has no level {level}")]
    UnknownLevel { game: String, level: usize },
    #[error("malformed level (line {line}, column {column}): {message}")]
    MalformedLevel {
        line: usize,
        column: usize,
        message: String,
    },
}

/// Static description of one bundled game.
#[derive(Debug)]
pub struct GameSpec {
    pub id: &'static str,
    pub nature: Nature,
    pub action_set: ActionSet,
    pub scoring: Scoring,
    pub timeout_rule: TimeoutRule,
    pub levels: [&'static str; LEVELS_PER_GAME],
    /// Inclusive bounds on the score change of a single tick.
    pub score_delta: (f64, f64),
    /// Characters allowed in the grid besides `.`, `#` and `A`.
    pub extra_chars: &'static str,
}

macro_rules! levels {
    ($dir:literal) => {
        [
            include_str!(concat!("../../levels/", $dir, "/0.txt")),
            include_str!(concat!("../../levels/", $dir, "/1.txt")),
            include_str!(concat!("../../levels/", $dir, "/2.txt")),
            include_str!(concat!("../../levels/", $dir, "/3.txt")),
            include_str!(concat!("../../levels/", $dir, "/4.txt")),
        ]
    };
}

fn actions(list: &[Action]) -> ActionSet {
    ActionSet::new(list.to_vec()).expect("static action set")
}

const MOVES: [Action; 5] = [Action::Nil, Action::Left, Action::Right, Action::Up, Action::Down];

static SPECS: LazyLock<[GameSpec; 6]> = LazyLock::new(|| {
    [
        GameSpec {
            id: "corridor_race",
            nature: Nature::Deterministic,
            action_set: actions(&MOVES),
            scoring: Scoring::Binary,
            timeout_rule: TimeoutRule::TimeoutLoss,
            levels: levels!("corridor_race"),
            score_delta: (0.0, 1.0),
            extra_chars: "E",
        },
        GameSpec {
            id: "missile_defense",
            nature: Nature::Deterministic,
            action_set: actions(&Action::ALL),
            scoring: Scoring::Discontinuous,
            timeout_rule: TimeoutRule::TimeoutWin,
            levels: levels!("missile_defense"),
            score_delta: (-8.0, 10.0),
            extra_chars: "MC",
        },
        GameSpec {
            id: "maze_escape",
            nature: Nature::Deterministic,
            action_set: actions(&MOVES),
            scoring: Scoring::Binary,
            timeout_rule: TimeoutRule::TimeoutLoss,
            levels: levels!("maze_escape"),
            score_delta: (0.0, 1.0),
            extra_chars: "EBO",
        },
        GameSpec {
            id: "invaders",
            nature: Nature::Stochastic,
            action_set: actions(&[Action::Nil, Action::Left, Action::Right, Action::Use]),
            scoring: Scoring::Incremental,
            timeout_rule: TimeoutRule::TimeoutLoss,
            levels: levels!("invaders"),
            score_delta: (0.0, 1.0),
            extra_chars: "X",
        },
        GameSpec {
            id: "butterfly_catch",
            nature: Nature::Stochastic,
            action_set: actions(&MOVES),
            scoring: Scoring::Incremental,
            timeout_rule: TimeoutRule::TimeoutLoss,
            levels: levels!("butterfly_catch"),
            score_delta: (0.0, f64::INFINITY),
            extra_chars: "FO",
        },
        GameSpec {
            id: "zombie_survival",
            nature: Nature::Stochastic,
            action_set: actions(&MOVES),
            scoring: Scoring::Incremental,
            timeout_rule: TimeoutRule::TimeoutWin,
            levels: levels!("zombie_survival"),
            score_delta: (0.0, 1.0),
            extra_chars: "ZH",
        },
    ]
});

impl GameKind {
    pub const ALL: [GameKind; 6] = [
        GameKind::CorridorRace,
        GameKind::MissileDefense,
        GameKind::MazeEscape,
        GameKind::Invaders,
        GameKind::ButterflyCatch,
        GameKind::ZombieSurvival,
    ];

    pub fn spec(self) -> &'static GameSpec {
        &SPECS[self as usize]
    }

    pub fn id(self) -> &'static str {
        self.spec().id
    }

    pub fn nature(self) -> Nature {
        self.spec().nature
    }

    pub fn action_set(self) -> &'static ActionSet {
        &self.spec().action_set
    }

    pub fn from_id(id: &str) -> Result<GameKind, GameError> {
        GameKind::ALL
            .into_iter()
            .find(|k| k.id() == id)
            .ok_or_else(|| GameError::UnknownGame(id.to_string()))
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for GameKind {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GameKind::from_id(s)
    }
}

/// Loads level `level` of `game_id` at tick 0. Stochastic games receive a
/// random stream derived from `(master_seed, game_id, level)`.
pub fn load_level(game_id: &str, level: usize, master_seed: u64) -> Result<GridState, GameError> {
    let kind = GameKind::from_id(game_id)?;
    load_kind(kind, level, master_seed)
}

pub fn load_kind(kind: GameKind, level: usize, master_seed: u64) -> Result<GridState, GameError> {
    let text = kind
        .spec()
        .levels
        .get(level)
        .ok_or_else(|| GameError::UnknownLevel {
            game: kind.id().to_string(),
            level,
        })?;
    let file = parse_level(kind, text)?;
    Ok(GridState::from_level(kind, level, &file, master_seed))
}

/// Stored winning action sequence for one level, replayed by the test suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub level: usize,
    pub seed: u64,
    pub actions: Vec<Action>,
}

macro_rules! witness_file {
    ($dir:literal) => {
        include_str!(concat!("../../levels/", $dir, "/witness.txt"))
    };
}

fn witness_text(kind: GameKind) -> &'static str {
    match kind {
        GameKind::CorridorRace => witness_file!("corridor_race"),
        GameKind::MissileDefense => witness_file!("missile_defense"),
        GameKind::MazeEscape => witness_file!("maze_escape"),
        GameKind::Invaders => witness_file!("invaders"),
        GameKind::ButterflyCatch => witness_file!("butterfly_catch"),
        GameKind::ZombieSurvival => witness_file!("zombie_survival"),
    }
}

/// Witness lines read `<level> <seed> <action codes>`; `#` starts a comment.
pub fn witnesses(kind: GameKind) -> Vec<Witness> {
    witness_text(kind)
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|line| {
            let mut parts = line.split_whitespace();
            let level = parts.next().and_then(|p| p.parse().ok()).expect("witness level");
            let seed = parts.next().and_then(|p| p.parse().ok()).expect("witness seed");
            let actions = parts
                .next()
                .unwrap_or("")
                .chars()
                .map(|c| Action::from_code(c).expect("witness action code"))
                .collect();
            Witness { level, seed, actions }
        })
        .collect()
}
