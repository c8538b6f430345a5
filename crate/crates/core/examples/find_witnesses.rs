//! Searches for a winning action sequence on every bundled level and prints
//! witness lines (`<level> <seed> <codes>`) per game.
//!
//! Deterministic games are solved by breadth-first search over states;
//! stochastic games by playing an agent on a fixed game seed until it wins.
//!
//! Usage: `cargo run --release --example find_witnesses [game]`

use std::collections::{HashSet, VecDeque};

use horizon::agents::AgentSpec;
use horizon::engine::{advance_unmetered, ForwardModel, GameStatus, RngStream};
use horizon::games::{load_kind, GameKind, GridState, Nature, LEVELS_PER_GAME};

fn codes(state: &GridState, plan: &[usize]) -> String {
    plan.iter().map(|&a| state.action_set().get(a).unwrap().code()).collect()
}

fn key(s: &GridState) -> (String, u64, u32) {
    (s.render(), s.score().to_bits(), s.tick() % 12)
}

fn bfs(root: &GridState) -> Option<Vec<usize>> {
    let n = root.action_set().len();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(root.clone(), Vec::new())]);
    seen.insert(key(root));
    while let Some((state, plan)) = queue.pop_front() {
        for a in 0..n {
            let mut next = state.clone();
            advance_unmetered(&mut next, a).unwrap();
            let mut p = plan.clone();
            p.push(a);
            match next.status() {
                GameStatus::Win => return Some(p),
                GameStatus::Loss => {}
                GameStatus::Ongoing => {
                    if seen.insert(key(&next)) {
                        queue.push_back((next, p));
                    }
                }
            }
        }
        if seen.len() > 5_000_000 {
            return None;
        }
    }
    None
}

fn play(kind: GameKind, level: usize, seed: u64, agent: AgentSpec) -> Option<Vec<usize>> {
    let mut state = load_kind(kind, level, seed).unwrap();
    let mut rng = RngStream::new(seed ^ 0x5eed);
    let mut plan = Vec::new();
    while state.status() == GameStatus::Ongoing {
        let a = agent.decide(&state, 480, &mut rng).unwrap().action;
        advance_unmetered(&mut state, a).unwrap();
        plan.push(a);
    }
    (state.status() == GameStatus::Win).then_some(plan)
}

fn main() {
    let only = std::env::args().nth(1);
    for kind in GameKind::ALL {
        if only.as_deref().is_some_and(|g| g != kind.id()) {
            continue;
        }
        println!("# {kind}");
        for level in 0..LEVELS_PER_GAME {
            let found = match kind.nature() {
                Nature::Deterministic => bfs(&load_kind(kind, level, 0).unwrap()).map(|p| (0, p)),
                Nature::Stochastic => (0..50).find_map(|seed| {
                    [AgentSpec::rhea(20, 14), AgentSpec::olmcts_default()]
                        .into_iter()
                        .find_map(|agent| play(kind, level, seed, agent))
                        .map(|p| (seed, p))
                }),
            };
            match found {
                Some((seed, plan)) => {
                    let s = load_kind(kind, level, seed).unwrap();
                    println!("{level} {seed} {}", codes(&s, &plan));
                }
                None => println!("# level {level}: no witness found"),
            }
        }
    }
}
