use horizon::engine::{
    advance, advance_unmetered, copy_state, derive_seed, legal_actions, BudgetMeter, EngineError, ForwardModel,
    GameStatus, RngStream,
};
use horizon::games::{load_kind, GameKind, GridState};
use proptest::prelude::*;

fn trajectory(mut s: GridState, actions: &[usize]) -> Vec<(u32, f64, GameStatus, horizon::games::Pos)> {
    let mut out = vec![s.fingerprint()];
    for &a in actions {
        if s.status().is_terminal() {
            break;
        }
        let a = a % s.action_set().len();
        advance_unmetered(&mut s, a).unwrap();
        out.push(s.fingerprint());
    }
    out
}

#[test]
fn advance_meters_each_call() {
    let mut s = load_kind(GameKind::CorridorRace, 1, 0).unwrap();
    let mut m = BudgetMeter::new(480);
    advance(&mut s, 0, &mut m).unwrap();
    assert_eq!((s.tick(), m.used()), (1, 1));
}

#[test]
fn exhausted_meter_leaves_state_untouched() {
    let mut s = load_kind(GameKind::Invaders, 0, 0).unwrap();
    let before = s.clone();
    let mut m = BudgetMeter::new(0);
    assert_eq!(advance(&mut s, 0, &mut m), Err(EngineError::BudgetExhausted { cap: 0 }));
    assert_eq!(s, before);
    assert_eq!(m.used(), 0);
}

#[test]
fn terminal_and_invalid_advances_fail() {
    let mut s = load_kind(GameKind::CorridorRace, 0, 0).unwrap();
    let mut m = BudgetMeter::new(480);
    assert!(matches!(advance(&mut s, 9, &mut m), Err(EngineError::InvalidAction { index: 9, size: 5 })));
    for _ in 0..5 {
        advance(&mut s, 2, &mut m).unwrap();
    }
    assert_eq!(s.status(), GameStatus::Win);
    assert_eq!(advance(&mut s, 0, &mut m), Err(EngineError::TerminalState));
    assert_eq!(m.used(), 5);
}

#[test]
fn reset_keeps_cap() {
    let mut m = BudgetMeter::new(3);
    m.consume().unwrap();
    m.consume().unwrap();
    m.reset();
    assert_eq!((m.used(), m.cap()), (0, 3));
}

#[test]
fn legal_actions_are_constant() {
    let mut s = load_kind(GameKind::MazeEscape, 2, 0).unwrap();
    let set = legal_actions(&s).clone();
    advance_unmetered(&mut s, 3).unwrap();
    assert_eq!(legal_actions(&s), &set);
}

#[test]
fn copy_is_isolated() {
    let original = load_kind(GameKind::CorridorRace, 0, 0).unwrap();
    let mut o = original.clone();
    let copy = copy_state(&o, &mut RngStream::new(0));
    assert_eq!(copy, o);
    for _ in 0..3 {
        advance_unmetered(&mut o, 2).unwrap();
    }
    assert_eq!(copy.tick(), 0);
    assert_eq!(copy, original);
}

proptest! {
    #[test]
    fn rng_same_seed_same_stream(seed: u64, label in "[a-z/0-9]{0,12}") {
        let mut a = RngStream::new(seed);
        let mut b = RngStream::new(seed);
        for _ in 0..16 {
            prop_assert_eq!(a.next_u64(), b.next_u64());
        }
        prop_assert_eq!(derive_seed(seed, &label), derive_seed(seed, &label));
        prop_assert_eq!(a.derive(&label).seed(), RngStream::new(seed).derive(&label).seed());
    }

    #[test]
    fn deterministic_replay(level in 0usize..5, actions in prop::collection::vec(0usize..6, 0..60)) {
        for kind in [GameKind::CorridorRace, GameKind::MissileDefense, GameKind::MazeEscape] {
            let a = trajectory(load_kind(kind, level, 1).unwrap(), &actions);
            let b = trajectory(load_kind(kind, level, 2).unwrap(), &actions);
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn stochastic_replay_ignores_agent_stream(
        level in 0usize..5,
        seed: u64,
        agent_seed: u64,
        actions in prop::collection::vec(0usize..6, 0..60),
    ) {
        for kind in [GameKind::Invaders, GameKind::ButterflyCatch, GameKind::ZombieSurvival] {
            let plain = trajectory(load_kind(kind, level, seed).unwrap(), &actions);
            // Simulating on copies between real steps must not perturb reality.
            let mut real = load_kind(kind, level, seed).unwrap();
            let mut agent = RngStream::new(agent_seed);
            let mut seen = vec![real.fingerprint()];
            for &a in &actions {
                if real.status().is_terminal() {
                    break;
                }
                let mut sim = copy_state(&real, &mut agent);
                let a = a % real.action_set().len();
                let _ = advance_unmetered(&mut sim, a);
                advance_unmetered(&mut real, a).unwrap();
                seen.push(real.fingerprint());
            }
            prop_assert_eq!(plain, seen);
        }
    }

    #[test]
    fn interleaved_copy_operations_leave_original_alone(
        ops in prop::collection::vec((any::<bool>(), 0usize..4), 1..40),
    ) {
        let base = load_kind(GameKind::Invaders, 3, 8).unwrap();
        let expected = trajectory(base.clone(), &ops.iter().map(|o| o.1).collect::<Vec<_>>());
        let mut real = base;
        let mut sim = copy_state(&real, &mut RngStream::new(1));
        let mut seen = vec![real.fingerprint()];
        for &(touch_copy, a) in &ops {
            if touch_copy && !sim.status().is_terminal() {
                advance_unmetered(&mut sim, a).unwrap();
            }
            if real.status().is_terminal() {
                break;
            }
            advance_unmetered(&mut real, a).unwrap();
            seen.push(real.fingerprint());
        }
        prop_assert_eq!(expected, seen);
    }
}
