//! Butterflies wander at random; touching one catches it for +2. A butterfly
//! that lands on a cocoon opens it and a new butterfly hatches there.
//!
//! Random draws: exactly one per butterfly per tick, in sprite id order.

use super::state::DIRECTIONS;
use super::{Cell, GridState, SpriteKind};
use crate::engine::{Action, GameStatus};

pub(super) fn step(state: &mut GridState, action: Action) {
    state.move_avatar(action, |c| c == Cell::Wall);

    // NPCs.
    for i in 0..state.sprites.len() {
        if state.sprites[i].kind != SpriteKind::Butterfly {
            continue;
        }
        let pos = state.sprites[i].pos;
        let mut options = [pos; 4];
        let mut n = 0;
        for d in DIRECTIONS {
            let t = pos.offset(d);
            if state.cell(t) != Cell::Wall {
                options[n] = t;
                n += 1;
            }
        }
        let pick = state.rng.below(n.max(1));
        if n > 0 {
            state.sprites[i].pos = options[pick];
        }
    }

    // Collisions.
    let before = state.sprites.len();
    let avatar = state.avatar;
    state.sprites.retain(|s| {
        !(s.kind == SpriteKind::Butterfly
            && (s.pos == avatar.pos || (s.prev == avatar.pos && s.pos == avatar.prev)))
    });
    let caught = (before - state.sprites.len()) as u32;
    state.counters.caught += caught;
    state.score += 2.0 * caught as f64;

    // Spawns.
    let hatch: Vec<_> = state
        .sprites
        .iter()
        .filter(|s| s.kind == SpriteKind::Butterfly)
        .map(|s| s.pos)
        .collect();
    for pos in hatch {
        if state.cell(pos) == Cell::Cocoon {
            state.set_cell(pos, Cell::Floor);
            state.add_sprite(SpriteKind::Butterfly, pos);
            state.counters.spawned += 1;
        }
    }

    if state.count_sprites(SpriteKind::Butterfly) == 0 {
        state.status = GameStatus::Win;
    } else if state.count_cells(Cell::Cocoon) == 0 {
        state.status = GameStatus::Loss;
    }
}
