//! Exit-door puzzle with pushable blocks and holes. Walking into a hole loses;
//! pushing a block into one fills it.

use super::{Cell, GridState, SpriteKind};
use crate::engine::{Action, GameStatus};

pub(super) fn step(state: &mut GridState, action: Action) {
    let Some(delta) = action.delta() else {
        return;
    };
    state.avatar.facing = action;
    let target = state.avatar.pos.offset(delta);
    match state.cell(target) {
        Cell::Wall => {}
        Cell::Hole => {
            state.avatar.pos = target;
            state.status = GameStatus::Loss;
        }
        Cell::Exit => {
            state.avatar.pos = target;
            state.score += 1.0;
            state.status = GameStatus::Win;
        }
        _ => {
            if let Some(block) = state.sprite_at(target, SpriteKind::Block) {
                let beyond = target.offset(delta);
                match state.cell(beyond) {
                    Cell::Floor if state.sprite_at(beyond, SpriteKind::Block).is_none() => {
                        state.sprites[block].pos = beyond;
                        state.avatar.pos = target;
                    }
                    Cell::Hole => {
                        state.sprites.remove(block);
                        state.set_cell(beyond, Cell::Floor);
                        state.counters.blocks_sunk += 1;
                        state.avatar.pos = target;
                    }
                    _ => {}
                }
            } else {
                state.avatar.pos = target;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{advance_unmetered, ForwardModel};
    use crate::games::{parse_level, GameKind, Pos};

    fn level(text: &str) -> GridState {
        let f = parse_level(GameKind::MazeEscape, text).unwrap();
        GridState::from_level(GameKind::MazeEscape, 0, &f, 0)
    }

    const RIGHT: usize = 2;

    #[test]
    fn push_block_into_hole_then_cross() {
        let mut s = level("#######\n#AB.OE#\n#######");
        advance_unmetered(&mut s, RIGHT).unwrap();
        assert_eq!(s.sprites()[0].pos, Pos::new(3, 1));
        advance_unmetered(&mut s, RIGHT).unwrap();
        assert!(s.sprites().is_empty());
        assert_eq!(s.cell(Pos::new(4, 1)), Cell::Floor);
        advance_unmetered(&mut s, RIGHT).unwrap();
        advance_unmetered(&mut s, RIGHT).unwrap();
        assert_eq!(s.status(), GameStatus::Win);
        assert_eq!(s.score(), 1.0);
    }

    #[test]
    fn blocked_push_does_not_move() {
        let mut s = level("######\n#ABB.#\n######");
        advance_unmetered(&mut s, RIGHT).unwrap();
        assert_eq!(s.avatar().pos, Pos::new(1, 1));
        let mut s = level("#####\n#AB##\n#####");
        advance_unmetered(&mut s, RIGHT).unwrap();
        assert_eq!(s.avatar().pos, Pos::new(1, 1));
    }

    #[test]
    fn hole_swallows_avatar() {
        let mut s = level("#####\n#AOE#\n#####");
        advance_unmetered(&mut s, RIGHT).unwrap();
        assert_eq!(s.status(), GameStatus::Loss);
    }
}
