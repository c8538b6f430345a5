//! Budgeted planners: rolling horizon evolution (with random search as a
//! preset), open-loop MCTS, and a uniform random baseline.
//!
//! Every planner receives a copy of the real state and a per-run
//! [`RngStream`]; all simulated steps are charged to a fresh
//! [`crate::engine::BudgetMeter`] per decision.

mod mcts;
mod rhea;
mod spec;

use serde::Serialize;
use thiserror::Error;

use crate::engine::{EngineError, ForwardModel, GameStatus, RngStream};

pub use mcts::{olmcts_decide, MctsConfig};
pub use rhea::{
    evaluate, init_population, mutate, rhea_decide, rs_decide, tournament_select, uniform_crossover,
    Individual, Mutation, RheaConfig,
};
pub use spec::AgentSpec;

/// Added to the score of a won state.
pub const WIN_BONUS: f64 = 1_000_000.0;
/// Subtracted from the score of a lost state.
pub const LOSS_PENALTY: f64 = 1_000_000.0;

/// State value used by every planner: the in-game score, shifted by a large
/// bonus on a win and a large penalty on a loss.
pub fn value_heuristic<S: ForwardModel>(state: &S) -> f64 {
    let score = state.score();
    match state.status() {
        GameStatus::Ongoing => score,
        GameStatus::Win => score + WIN_BONUS,
        GameStatus::Loss => score - LOSS_PENALTY,
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AgentError {
    #[error("no budget left to evaluate any gene")]
    ZeroBudget,
    #[error("cannot plan from a terminal state")]
    TerminalRoot,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("invalid agent spec `{spec}`: {reason}")]
    InvalidSpec { spec: String, reason: String },
}

/// Counters describing one decision, audited by the acceptance suite.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct DecisionTrace {
    pub budget: u64,
    pub advance_calls_used: u64,
    /// Evolved generations whose new individuals were all evaluated.
    pub generations_completed: u32,
    /// Fully evaluated populations: the initial one plus completed generations.
    pub population_evaluations: u32,
    pub crossovers: u32,
    pub mutations: u32,
    pub degenerate_mutations: u32,
    pub evaluations: u32,
    /// MCTS iterations.
    pub iterations: u32,
    /// Evaluations or iterations that stopped on a terminal state before
    /// using their full length.
    pub terminal_cutoffs: u32,
    /// RHEA individual length or MCTS depth; `None` for budget-free agents.
    pub horizon: Option<usize>,
    /// MCTS root visit count and per-action root child visits.
    pub root_visits: u32,
    pub child_visits: Vec<u32>,
    /// Most individuals alive at once during evolution.
    pub peak_individuals: usize,
    /// Best fitness in the population after initialization and after each
    /// generation.
    pub best_per_generation: Vec<f64>,
    pub chosen_action: usize,
    pub best_fitness: Option<f64>,
    /// Set when the budget could not pay for a single evaluation.
    pub no_evaluation: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decision {
    pub action: usize,
    pub trace: DecisionTrace,
}

/// Uniform random action; consumes no budget.
pub fn random_decide<S: ForwardModel>(root: &S, rng: &mut RngStream) -> usize {
    rng.below(root.action_set().len())
}

pub(crate) fn no_evaluation(root_nil: usize, budget: u64, horizon: usize) -> Decision {
    Decision {
        action: root_nil,
        trace: DecisionTrace {
            budget,
            horizon: Some(horizon),
            chosen_action: root_nil,
            no_evaluation: true,
            ..DecisionTrace::default()
        },
    }
}

#[cfg(test)]
pub(crate) mod toy {
    //! Small hand-made games for planner tests.

    use crate::engine::{Action, ActionSet, ForwardModel, GameStatus, RngStream};

    /// Deterministic game whose score is a sum of per-step rewards
    /// `rewards[tick][action]`; the episode lasts `rewards.len()` ticks and
    /// times out as a win.
    #[derive(Clone, Debug)]
    pub struct RewardTable {
        pub rewards: Vec<Vec<f64>>,
        pub actions: ActionSet,
        pub tick: u32,
        pub score: f64,
        pub status: GameStatus,
        pub horizon: u32,
    }

    impl RewardTable {
        pub fn new(rewards: Vec<Vec<f64>>, horizon: u32) -> Self {
            let n = rewards[0].len();
            let actions = ActionSet::new(Action::ALL[..n].to_vec()).unwrap();
            Self {
                rewards,
                actions,
                tick: 0,
                score: 0.0,
                status: GameStatus::Ongoing,
                horizon,
            }
        }
    }

    impl ForwardModel for RewardTable {
        fn action_set(&self) -> &ActionSet {
            &self.actions
        }
        fn status(&self) -> GameStatus {
            self.status
        }
        fn score(&self) -> f64 {
            self.score
        }
        fn tick(&self) -> u32 {
            self.tick
        }
        fn max_ticks(&self) -> u32 {
            self.horizon
        }
        fn is_stochastic(&self) -> bool {
            false
        }
        fn reseed(&mut self, _rng: RngStream) {}
        fn apply_rules(&mut self, action: usize) {
            if let Some(row) = self.rewards.get(self.tick as usize) {
                self.score += row[action];
            }
            self.tick += 1;
            if self.tick >= self.horizon {
                self.status = GameStatus::Win;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::load_level;

    #[test]
    fn heuristic_values() {
        let mut s = toy::RewardTable::new(vec![vec![0.0]], 5);
        s.score = 3.0;
        assert_eq!(value_heuristic(&s), 3.0);
        s.score = 5.0;
        s.status = GameStatus::Win;
        assert_eq!(value_heuristic(&s), 1_000_005.0);
        s.status = GameStatus::Loss;
        assert_eq!(value_heuristic(&s), -999_995.0);
    }

    #[test]
    fn random_is_budget_free_and_uniform() {
        let s = load_level("corridor_race", 0, 0).unwrap();
        let mut rng = RngStream::new(11);
        let mut counts = [0usize; 5];
        for _ in 0..10_000 {
            counts[random_decide(&s, &mut rng)] += 1;
        }
        for c in counts {
            let freq = c as f64 / 10_000.0;
            assert!((freq - 0.2).abs() < 0.02, "{counts:?}");
        }
        let one = toy::RewardTable::new(vec![vec![0.0]], 3);
        assert_eq!(random_decide(&one, &mut rng), 0);
        let (mut a, mut b) = (RngStream::new(4), RngStream::new(4));
        let xs: Vec<_> = (0..20).map(|_| random_decide(&s, &mut a)).collect();
        let ys: Vec<_> = (0..20).map(|_| random_decide(&s, &mut b)).collect();
        assert_eq!(xs, ys);
    }
}
