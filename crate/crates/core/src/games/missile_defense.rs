//! Missiles fall on cities along fixed columns. `USE` destroys every missile
//! on or next to the avatar for +2 each; a missile landing on a city razes it
//! for -1. Losing every city loses; clearing every missile (or outlasting the
//! clock) wins.

use super::{Cell, GridState, SpriteKind};
use crate::engine::{Action, GameStatus};

pub(super) fn step(state: &mut GridState, action: Action) {
    // Avatar.
    if action == Action::Use {
        let at = state.avatar.pos;
        let before = state.sprites.len();
        state
            .sprites
            .retain(|s| !(s.kind == SpriteKind::Missile && s.pos.manhattan(at) <= 1));
        let destroyed = (before - state.sprites.len()) as u32;
        state.counters.missiles_destroyed += destroyed;
        state.score += 2.0 * destroyed as f64;
    } else {
        state.move_avatar(action, |c| matches!(c, Cell::Wall | Cell::City));
    }

    // Projectiles.
    if (state.tick + 1) % state.params.missile_period == 0 {
        let mut i = 0;
        while i < state.sprites.len() {
            let target = state.sprites[i].pos.offset((0, 1));
            match state.cell(target) {
                Cell::City => {
                    state.set_cell(target, Cell::Floor);
                    state.sprites.remove(i);
                    state.counters.cities_lost += 1;
                    state.score -= 1.0;
                }
                Cell::Wall => {
                    state.sprites.remove(i);
                }
                _ => {
                    state.sprites[i].pos = target;
                    i += 1;
                }
            }
        }
    }

    // End conditions.
    if state.count_cells(Cell::City) == 0 {
        state.status = GameStatus::Loss;
    } else if state.count_sprites(SpriteKind::Missile) == 0 {
        state.status = GameStatus::Win;
    }
}
