//! Timed race to an exit door. Binary score: 1 on reaching `E`.

use super::{Cell, GridState};
use crate::engine::{Action, GameStatus};

pub(super) fn step(state: &mut GridState, action: Action) {
    if let Some(Cell::Exit) = state.move_avatar(action, |c| c == Cell::Wall) {
        state.score += 1.0;
        state.status = GameStatus::Win;
    }
}

#[cfg(test)]
mod tests {
    use crate::engine::{advance_unmetered, ForwardModel, GameStatus};
    use crate::games::{load_level, Pos};

    const RIGHT: usize = 2;
    const LEFT: usize = 1;

    #[test]
    fn exit_next_to_avatar_wins() {
        let mut s = load_level("corridor_race", 0, 0).unwrap();
        for _ in 0..4 {
            advance_unmetered(&mut s, RIGHT).unwrap();
        }
        assert_eq!(s.status(), GameStatus::Ongoing);
        advance_unmetered(&mut s, RIGHT).unwrap();
        assert_eq!(s.status(), GameStatus::Win);
        assert_eq!(s.score(), 1.0);
        assert_eq!(s.tick(), 5);
    }

    #[test]
    fn wall_blocks() {
        let mut s = load_level("corridor_race", 0, 0).unwrap();
        let start = s.avatar().pos;
        advance_unmetered(&mut s, LEFT).unwrap();
        assert_eq!(s.avatar().pos, start);
        assert_eq!(s.tick(), 1);
        assert_eq!(start, Pos::new(1, 1));
    }

    #[test]
    fn timeout_is_loss() {
        let mut s = load_level("corridor_race", 0, 0).unwrap();
        while s.status() == GameStatus::Ongoing {
            advance_unmetered(&mut s, 0).unwrap();
        }
        assert_eq!(s.status(), GameStatus::Loss);
        assert_eq!(s.tick(), s.max_ticks());
    }
}
