//! Survive the clock while zombies close in; honey is worth +1.
//!
//! On every move tick each zombie (id order) takes exactly two draws: one
//! deciding whether it chases, one choosing the direction (tie-break between
//! two closing directions, or the random step).

use super::state::DIRECTIONS;
use super::{Cell, GridState, SpriteKind};
use crate::engine::{Action, GameStatus};

pub(super) fn step(state: &mut GridState, action: Action) {
    if let Some(Cell::Honey) = state.move_avatar(action, |c| c == Cell::Wall) {
        let at = state.avatar.pos;
        state.set_cell(at, Cell::Floor);
        state.score += 1.0;
        state.avatar.resources += 1;
    }

    // NPCs.
    if (state.tick + 1) % state.params.zombie_period == 0 {
        let target = state.avatar.pos;
        for i in 0..state.sprites.len() {
            if state.sprites[i].kind != SpriteKind::Zombie {
                continue;
            }
            let pos = state.sprites[i].pos;
            let chase = state.rng.chance(state.params.chase_prob);
            let r = state.rng.next_u64();
            let next = if chase {
                let dx = (target.x - pos.x).signum();
                let dy = (target.y - pos.y).signum();
                let mut options = Vec::with_capacity(2);
                for d in [(dx, 0), (0, dy)] {
                    if d != (0, 0) && state.cell(pos.offset(d)) != Cell::Wall {
                        options.push(pos.offset(d));
                    }
                }
                match options.len() {
                    0 => pos,
                    n => options[(r % n as u64) as usize],
                }
            } else {
                let t = pos.offset(DIRECTIONS[(r % 4) as usize]);
                if state.cell(t) == Cell::Wall {
                    pos
                } else {
                    t
                }
            };
            state.sprites[i].pos = next;
        }
    }

    // Collisions.
    if state
        .sprites
        .iter()
        .any(|s| s.kind == SpriteKind::Zombie && state.touches_avatar(s))
    {
        state.status = GameStatus::Loss;
    }
}
