//! Open-loop Monte Carlo tree search.
//!
//! Nodes hold statistics only, never states: every iteration replays the
//! tree path from a fresh copy of the root, paying for each step. Depth is
//! counted from the root and covers tree descent plus rollout.

use crate::engine::{advance, copy_state, BudgetMeter, ForwardModel, RngStream};

use super::{no_evaluation, value_heuristic, AgentError, Decision, DecisionTrace};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MctsConfig {
    pub max_depth: usize,
    /// UCB1 exploration constant.
    pub exploration: f64,
    pub budget: u64,
}

impl MctsConfig {
    pub fn new(max_depth: usize, exploration: f64, budget: u64) -> Self {
        assert!(max_depth >= 1 && exploration >= 0.0);
        Self {
            max_depth,
            exploration,
            budget,
        }
    }
}

impl Default for MctsConfig {
    fn default() -> Self {
        Self::new(10, std::f64::consts::SQRT_2, 480)
    }
}

#[derive(Clone, Debug)]
struct Node {
    visits: u32,
    total: f64,
    children: Vec<Option<usize>>,
}

impl Node {
    fn new(n: usize) -> Self {
        Self {
            visits: 0,
            total: 0.0,
            children: vec![None; n],
        }
    }
}

struct Tree {
    nodes: Vec<Node>,
    /// Running min and max of backed-up values, for normalization.
    bounds: (f64, f64),
    n: usize,
}

impl Tree {
    fn normalize(&self, v: f64) -> f64 {
        let (lo, hi) = self.bounds;
        if hi > lo {
            (v - lo) / (hi - lo)
        } else {
            0.0
        }
    }

    fn ucb_child(&self, node: usize, c: f64, rng: &mut RngStream) -> (usize, usize) {
        let parent = &self.nodes[node];
        let log_n = (parent.visits.max(1) as f64).ln();
        let mut best = f64::NEG_INFINITY;
        let mut ties: Vec<(usize, usize)> = Vec::new();
        for (action, child) in parent.children.iter().enumerate() {
            let id = child.expect("fully expanded");
            let ch = &self.nodes[id];
            let mean = ch.total / ch.visits as f64;
            let value = self.normalize(mean) + c * (log_n / ch.visits as f64).sqrt();
            if value > best {
                best = value;
                ties.clear();
            }
            if value == best {
                ties.push((action, id));
            }
        }
        ties[rng.below(ties.len())]
    }
}

/// One open-loop MCTS decision. Recommends the most visited root child, ties
/// broken uniformly at random.
pub fn olmcts_decide<S: ForwardModel>(
    root: &S,
    cfg: &MctsConfig,
    rng: &mut RngStream,
) -> Result<Decision, AgentError> {
    if root.status().is_terminal() {
        return Err(AgentError::TerminalRoot);
    }
    let n = root.action_set().len();
    let mut meter = BudgetMeter::new(cfg.budget);
    let mut tree = Tree {
        nodes: vec![Node::new(n)],
        bounds: (f64::INFINITY, f64::NEG_INFINITY),
        n,
    };
    let mut trace = DecisionTrace {
        budget: cfg.budget,
        horizon: Some(cfg.max_depth),
        ..DecisionTrace::default()
    };
    let mut path = Vec::with_capacity(cfg.max_depth + 1);

    while !meter.is_exhausted() {
        let mut state = copy_state(root, rng);
        path.clear();
        path.push(0);
        let mut node = 0;
        let mut depth = 0;
        let mut out_of_budget = false;

        // Selection and expansion.
        while depth < cfg.max_depth && !state.status().is_terminal() {
            let untried: Vec<usize> = (0..tree.n)
                .filter(|&a| tree.nodes[node].children[a].is_none())
                .collect();
            let (action, expand) = if untried.is_empty() {
                (tree.ucb_child(node, cfg.exploration, rng).0, false)
            } else {
                (untried[rng.below(untried.len())], true)
            };
            if advance(&mut state, action, &mut meter).is_err() {
                out_of_budget = true;
                break;
            }
            depth += 1;
            node = match tree.nodes[node].children[action] {
                Some(id) => id,
                None => {
                    tree.nodes.push(Node::new(n));
                    let id = tree.nodes.len() - 1;
                    tree.nodes[node].children[action] = Some(id);
                    id
                }
            };
            path.push(node);
            if expand {
                break;
            }
        }

        // Rollout.
        if !out_of_budget {
            while depth < cfg.max_depth && !state.status().is_terminal() {
                if advance(&mut state, rng.below(n), &mut meter).is_err() {
                    break;
                }
                depth += 1;
            }
        }
        if depth < cfg.max_depth && state.status().is_terminal() {
            trace.terminal_cutoffs += 1;
        }

        let value = value_heuristic(&state);
        tree.bounds.0 = tree.bounds.0.min(value);
        tree.bounds.1 = tree.bounds.1.max(value);
        for &id in &path {
            tree.nodes[id].visits += 1;
            tree.nodes[id].total += value;
        }
        trace.iterations += 1;
    }

    let root_node = &tree.nodes[0];
    if trace.iterations == 0 {
        return Ok(no_evaluation(root.action_set().nil_index(), cfg.budget, cfg.max_depth));
    }
    let visits: Vec<u32> = root_node
        .children
        .iter()
        .map(|c| c.map_or(0, |id| tree.nodes[id].visits))
        .collect();
    let most = *visits.iter().max().expect("non-empty action set");
    let ties: Vec<usize> = (0..n).filter(|&a| visits[a] == most).collect();
    let action = ties[rng.below(ties.len())];
    let chosen = &tree.nodes[root_node.children[action].expect("visited")];

    trace.advance_calls_used = meter.used();
    trace.evaluations = trace.iterations;
    trace.chosen_action = action;
    trace.best_fitness = Some(chosen.total / chosen.visits as f64);
    trace.root_visits = root_node.visits;
    trace.child_visits = visits;
    Ok(Decision { action, trace })
}
