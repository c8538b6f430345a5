//! Game-state contract shared by every game and agent.
//!
//! A game is any `Clone` value implementing [`ForwardModel`]. Planning code
//! never calls [`ForwardModel::apply_rules`] directly: simulated steps go
//! through [`advance`], which checks preconditions and charges a
//! [`BudgetMeter`]; the real game is stepped with [`advance_unmetered`].

mod budget;
mod rng;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use budget::BudgetMeter;
pub use rng::{derive_seed, RngStream};

/// Default episode length when a level does not override it.
pub const DEFAULT_MAX_TICKS: u32 = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Action {
    Nil,
    Left,
    Right,
    Up,
    Down,
    Use,
}

impl Action {
    pub const ALL: [Action; 6] = [
        Action::Nil,
        Action::Left,
        Action::Right,
        Action::Up,
        Action::Down,
        Action::Use,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Action::Nil => "NIL",
            Action::Left => "LEFT",
            Action::Right => "RIGHT",
            Action::Up => "UP",
            Action::Down => "DOWN",
            Action::Use => "USE",
        }
    }

    /// Single-letter code used in witness files and traces.
    pub fn code(self) -> char {
        match self {
            Action::Nil => 'N',
            Action::Left => 'L',
            Action::Right => 'R',
            Action::Up => 'U',
            Action::Down => 'D',
            Action::Use => 'F',
        }
    }

    pub fn from_code(c: char) -> Option<Action> {
        Action::ALL.into_iter().find(|a| a.code() == c)
    }

    /// Unit displacement `(dx, dy)` for movement actions, `y` growing downwards.
    pub fn delta(self) -> Option<(i32, i32)> {
        match self {
            Action::Left => Some((-1, 0)),
            Action::Right => Some((1, 0)),
            Action::Up => Some((0, -1)),
            Action::Down => Some((0, 1)),
            Action::Nil | Action::Use => None,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Ordered, per-game set of legal actions. Index `i` always maps to the same
/// [`Action`] for the lifetime of a game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSet {
    actions: Vec<Action>,
}

impl ActionSet {
    pub fn new(actions: Vec<Action>) -> Result<Self, EngineError> {
        if actions.is_empty() || actions.len() > Action::ALL.len() {
            return Err(EngineError::InvalidActionSet(format!(
                "size {} outside 1..=6",
                actions.len()
            )));
        }
        if !actions.contains(&Action::Nil) {
            return Err(EngineError::InvalidActionSet("NIL missing".into()));
        }
        for (i, a) in actions.iter().enumerate() {
            if actions[..i].contains(a) {
                return Err(EngineError::InvalidActionSet(format!("duplicate {a}")));
            }
        }
        Ok(Self { actions })
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<Action> {
        self.actions.get(index).copied()
    }

    pub fn index_of(&self, action: Action) -> Option<usize> {
        self.actions.iter().position(|&a| a == action)
    }

    /// Index of NIL, present in every valid set.
    pub fn nil_index(&self) -> usize {
        self.index_of(Action::Nil).expect("validated on construction")
    }

    pub fn iter(&self) -> impl Iterator<Item = Action> + '_ {
        self.actions.iter().copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GameStatus {
    Ongoing,
    Win,
    Loss,
}

impl GameStatus {
    pub fn is_terminal(self) -> bool {
        self != GameStatus::Ongoing
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("forward-model budget of {cap} advance calls exhausted")]
    BudgetExhausted { cap: u64 },
    #[error("cannot advance a terminal state")]
    TerminalState,
    #[error("action index {index} out of range for {size} actions")]
    InvalidAction { index: usize, size: usize },
    #[error("invalid action set: {0}")]
    InvalidActionSet(String),
}

/// A copyable world snapshot that can be advanced one action at a time.
///
/// Implementors guarantee that `apply_rules` increments the tick by one and
/// resolves the timeout (status never stays `Ongoing` at `max_ticks`).
pub trait ForwardModel: Clone + Send {
    fn action_set(&self) -> &ActionSet;
    fn status(&self) -> GameStatus;
    fn score(&self) -> f64;
    fn tick(&self) -> u32;
    fn max_ticks(&self) -> u32;
    fn is_stochastic(&self) -> bool;

    /// Replaces the state's internal random stream. Never called on
    /// deterministic games.
    fn reseed(&mut self, rng: RngStream);

    /// Applies one tick of the game rules. Callers have already checked that
    /// the state is ongoing and the action index is in range.
    fn apply_rules(&mut self, action: usize);
}

/// Copies `state` for simulation. Stochastic games get a fresh stream split
/// off the caller's `agent_rng`, so simulations cannot replay the real game's
/// randomness. Deterministic games draw nothing.
pub fn copy_state<S: ForwardModel>(state: &S, agent_rng: &mut RngStream) -> S {
    let mut copy = state.clone();
    if copy.is_stochastic() {
        copy.reseed(agent_rng.split());
    }
    copy
}

/// Metered simulation step. On error the state and the meter are untouched.
pub fn advance<S: ForwardModel>(
    state: &mut S,
    action: usize,
    meter: &mut BudgetMeter,
) -> Result<(), EngineError> {
    if meter.is_exhausted() {
        return Err(EngineError::BudgetExhausted { cap: meter.cap() });
    }
    check_step(state, action)?;
    meter.consume()?;
    step(state, action);
    Ok(())
}

/// Step of the real game; planning budgets do not apply to it.
pub fn advance_unmetered<S: ForwardModel>(state: &mut S, action: usize) -> Result<(), EngineError> {
    check_step(state, action)?;
    step(state, action);
    Ok(())
}

pub fn legal_actions<S: ForwardModel>(state: &S) -> &ActionSet {
    state.action_set()
}

fn check_step<S: ForwardModel>(state: &S, action: usize) -> Result<(), EngineError> {
    if state.status().is_terminal() {
        return Err(EngineError::TerminalState);
    }
    let size = state.action_set().len();
    if action >= size {
        return Err(EngineError::InvalidAction {
            index: action,
            size,
        });
    }
    Ok(())
}

fn step<S: ForwardModel>(state: &mut S, action: usize) {
    let before = state.tick();
    state.apply_rules(action);
    debug_assert_eq!(state.tick(), before + 1, "rules must advance the tick");
    debug_assert!(
        state.tick() < state.max_ticks() || state.status().is_terminal(),
        "timeout must resolve the episode"
    );
}
