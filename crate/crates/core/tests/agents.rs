use horizon::agents::{
    olmcts_decide, random_decide, rhea_decide, rs_decide, AgentSpec, MctsConfig, RheaConfig,
};
use horizon::engine::{advance_unmetered, Action, ActionSet, ForwardModel, GameStatus, RngStream};
use horizon::games::{load_kind, GameKind, GridState};
use proptest::prelude::*;

/// A bundled game whose score is shifted by a constant.
#[derive(Clone)]
struct Shifted {
    inner: GridState,
    offset: f64,
}

impl ForwardModel for Shifted {
    fn action_set(&self) -> &ActionSet {
        self.inner.action_set()
    }
    fn status(&self) -> GameStatus {
        self.inner.status()
    }
    fn score(&self) -> f64 {
        self.inner.score() + self.offset
    }
    fn tick(&self) -> u32 {
        self.inner.tick()
    }
    fn max_ticks(&self) -> u32 {
        self.inner.max_ticks()
    }
    fn is_stochastic(&self) -> bool {
        self.inner.is_stochastic()
    }
    fn reseed(&mut self, rng: RngStream) {
        self.inner.reseed(rng)
    }
    fn apply_rules(&mut self, action: usize) {
        self.inner.apply_rules(action)
    }
}

/// Single-action game that never ends within the horizon.
#[derive(Clone)]
struct OnlyNil {
    actions: ActionSet,
    tick: u32,
}

impl ForwardModel for OnlyNil {
    fn action_set(&self) -> &ActionSet {
        &self.actions
    }
    fn status(&self) -> GameStatus {
        GameStatus::Ongoing
    }
    fn score(&self) -> f64 {
        0.0
    }
    fn tick(&self) -> u32 {
        self.tick
    }
    fn max_ticks(&self) -> u32 {
        u32::MAX
    }
    fn is_stochastic(&self) -> bool {
        false
    }
    fn reseed(&mut self, _: RngStream) {}
    fn apply_rules(&mut self, _: usize) {
        self.tick += 1;
    }
}

fn mid_game(kind: GameKind, level: usize, seed: u64, steps: usize) -> GridState {
    let mut s = load_kind(kind, level, seed).unwrap();
    let mut r = RngStream::new(seed);
    for _ in 0..steps {
        if s.status().is_terminal() {
            return load_kind(kind, level, seed).unwrap();
        }
        let a = r.below(s.action_set().len());
        advance_unmetered(&mut s, a).unwrap();
    }
    if s.status().is_terminal() {
        load_kind(kind, level, seed).unwrap()
    } else {
        s
    }
}

fn any_kind() -> impl Strategy<Value = GameKind> {
    prop::sample::select(GameKind::ALL.to_vec())
}

#[test]
fn rs_preset_is_rhea_24_20() {
    for kind in GameKind::ALL {
        let root = mid_game(kind, 2, 4, 5);
        let a = rs_decide(&root, 480, &mut RngStream::new(9)).unwrap();
        let b = rhea_decide(&root, &RheaConfig::new(24, 20, 480), &mut RngStream::new(9)).unwrap();
        assert_eq!(a, b);
        let big = rs_decide(&root, 1920, &mut RngStream::new(9)).unwrap();
        assert_eq!(big.trace.generations_completed, 3);
        assert!(a.trace.evaluations >= 24 && big.trace.evaluations >= 24);
    }
}

#[test]
fn random_with_one_action_is_zero() {
    let root = OnlyNil {
        actions: ActionSet::new(vec![Action::Nil]).unwrap(),
        tick: 0,
    };
    let mut rng = RngStream::new(3);
    assert!((0..20).all(|_| random_decide(&root, &mut rng) == 0));
    let d = olmcts_decide(&root, &MctsConfig::new(10, 1.4, 480), &mut rng).unwrap();
    assert_eq!(d.action, 0);
    let d = rhea_decide(&root, &RheaConfig::new(1, 6, 60), &mut rng).unwrap();
    assert_eq!(d.action, 0);
    assert_eq!(d.trace.degenerate_mutations, d.trace.mutations);
}

#[test]
fn agent_specs_decide_through_one_entry_point() {
    let root = mid_game(GameKind::ZombieSurvival, 0, 1, 3);
    for spec in ["random", "rs", "rhea:P=7,L=12", "olmcts:depth=10,c=1.414"] {
        let spec: AgentSpec = spec.parse().unwrap();
        let d = spec.decide(&root, 480, &mut RngStream::new(2)).unwrap();
        assert!(d.action < root.action_set().len());
        assert!(d.trace.advance_calls_used <= 480);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rhea_budget_soundness_and_monotone_best(
        kind in any_kind(),
        level in 0usize..5,
        steps in 0usize..20,
        p in prop::sample::select(vec![1usize, 2, 5, 13]),
        l in prop::sample::select(vec![6usize, 10, 14, 20]),
        seed: u64,
    ) {
        let root = mid_game(kind, level, seed, steps);
        let d = rhea_decide(&root, &RheaConfig::new(p, l, 480), &mut RngStream::new(seed)).unwrap();
        let t = &d.trace;
        prop_assert!(t.advance_calls_used <= 480);
        if t.terminal_cutoffs == 0 {
            prop_assert!(t.advance_calls_used > 480 - l as u64);
        }
        prop_assert!(t.best_per_generation.windows(2).all(|w| w[1] >= w[0]));
        if p == 1 {
            prop_assert!(t.peak_individuals <= 2);
        }
    }

    #[test]
    fn rhea_choice_ignores_score_offsets(
        kind in any_kind(),
        level in 0usize..5,
        steps in 0usize..20,
        seed: u64,
        offset in -1000i32..1000,
    ) {
        let inner = mid_game(kind, level, seed, steps);
        let plain = Shifted { inner: inner.clone(), offset: 0.0 };
        let shifted = Shifted { inner, offset: offset as f64 };
        let cfg = RheaConfig::new(5, 10, 480);
        let a = rhea_decide(&plain, &cfg, &mut RngStream::new(seed)).unwrap();
        let b = rhea_decide(&shifted, &cfg, &mut RngStream::new(seed)).unwrap();
        prop_assert_eq!(a.action, b.action);
    }

    #[test]
    fn mcts_visits_are_conserved(
        kind in any_kind(),
        level in 0usize..5,
        steps in 0usize..20,
        seed: u64,
        budget in 1u64..600,
    ) {
        let root = mid_game(kind, level, seed, steps);
        let d = olmcts_decide(&root, &MctsConfig::new(10, std::f64::consts::SQRT_2, budget), &mut RngStream::new(seed)).unwrap();
        let t = &d.trace;
        prop_assert!(t.advance_calls_used <= budget);
        prop_assert_eq!(t.root_visits, t.child_visits.iter().sum::<u32>());
        prop_assert_eq!(t.root_visits, t.iterations);
        prop_assert!(d.action < root.action_set().len());
    }
}
