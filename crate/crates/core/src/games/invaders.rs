//! A marching alien rank drops bombs at random; the avatar shoots back.
//!
//! Random draws: exactly one per living alien per tick, in sprite id order,
//! during the spawn phase.

use super::{Cell, GridState, SpriteKind};
use crate::engine::{Action, GameStatus};

pub(super) fn step(state: &mut GridState, action: Action) {
    // Avatar: horizontal movement or a shot, one in flight at a time.
    match action {
        Action::Left | Action::Right => {
            state.move_avatar(action, |c| c == Cell::Wall);
        }
        Action::Use if state.count_sprites(SpriteKind::Shot) == 0 => {
            let at = state.avatar.pos;
            state.add_sprite(SpriteKind::Shot, at);
        }
        _ => {}
    }

    // Projectiles.
    let mut i = 0;
    while i < state.sprites.len() {
        let dy = match state.sprites[i].kind {
            SpriteKind::Shot => -1,
            SpriteKind::Bomb => 1,
            _ => {
                i += 1;
                continue;
            }
        };
        let target = state.sprites[i].pos.offset((0, dy));
        if state.cell(target) == Cell::Wall {
            state.sprites.remove(i);
        } else {
            state.sprites[i].pos = target;
            i += 1;
        }
    }

    // NPCs: the whole rank shifts sideways, or descends and turns at a wall.
    if (state.tick + 1) % state.params.march_period == 0 {
        let dir = state.march_dir;
        let blocked = state
            .sprites
            .iter()
            .filter(|s| s.kind == SpriteKind::Alien)
            .any(|s| state.cell(s.pos.offset((dir, 0))) == Cell::Wall);
        let delta = if blocked { (0, 1) } else { (dir, 0) };
        if blocked {
            state.march_dir = -dir;
        }
        for s in state.sprites.iter_mut().filter(|s| s.kind == SpriteKind::Alien) {
            s.pos = s.pos.offset(delta);
        }
    }

    // Collisions.
    let shots: Vec<usize> = (0..state.sprites.len())
        .filter(|&i| state.sprites[i].kind == SpriteKind::Shot)
        .collect();
    let mut dead: Vec<usize> = Vec::new();
    for si in shots {
        let shot = state.sprites[si];
        let hit = state.sprites.iter().position(|a| {
            a.kind == SpriteKind::Alien
                && (a.pos == shot.pos || (a.prev == shot.pos && a.pos == shot.prev))
        });
        if let Some(ai) = hit {
            if !dead.contains(&ai) {
                dead.extend([si, ai]);
                state.score += 1.0;
                state.counters.kills += 1;
            }
        }
    }
    dead.sort_unstable();
    for i in dead.into_iter().rev() {
        state.sprites.remove(i);
    }
    let avatar_row = state.avatar.pos.y;
    let lost = state.sprites.iter().any(|s| match s.kind {
        SpriteKind::Bomb => state.touches_avatar(s),
        SpriteKind::Alien => s.pos.y >= avatar_row,
        _ => false,
    });
    if lost {
        state.status = GameStatus::Loss;
        return;
    }

    // Spawns: each alien may drop a bomb into the cell below it.
    let aliens: Vec<_> = state
        .sprites
        .iter()
        .filter(|s| s.kind == SpriteKind::Alien)
        .map(|s| s.pos)
        .collect();
    let prob = state.params.bomb_prob;
    for pos in aliens {
        if state.rng.chance(prob) {
            let below = pos.offset((0, 1));
            if state.cell(below) != Cell::Wall {
                state.add_sprite(SpriteKind::Bomb, below);
                if below == state.avatar.pos {
                    state.status = GameStatus::Loss;
                }
            }
        }
    }

    if state.status == GameStatus::Ongoing && state.count_sprites(SpriteKind::Alien) == 0 {
        state.status = GameStatus::Win;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{advance_unmetered, copy_state, ForwardModel, RngStream};
    use crate::games::{load_level, parse_level, GameKind, Pos};

    fn level(text: &str) -> GridState {
        let f = parse_level(GameKind::Invaders, text).unwrap();
        GridState::from_level(GameKind::Invaders, 0, &f, 0)
    }

    const NIL: usize = 0;
    const USE: usize = 3;

    #[test]
    fn shot_kills_alien_above() {
        let mut s = level("#bomb_prob=0\n#march_period=100\n#####\n#.X.#\n#...#\n#...#\n#.A.#\n#####");
        advance_unmetered(&mut s, USE).unwrap();
        assert_eq!(s.count_sprites(SpriteKind::Shot), 1);
        advance_unmetered(&mut s, USE).unwrap();
        assert_eq!(s.count_sprites(SpriteKind::Shot), 1, "one shot in flight");
        advance_unmetered(&mut s, NIL).unwrap();
        assert_eq!(s.score(), 1.0);
        assert_eq!(s.status(), GameStatus::Win);
    }

    #[test]
    fn rank_bounces_and_descends() {
        let mut s = level("#bomb_prob=0\n#march_period=1\n#####\n#X..#\n#...#\n#...#\n#..A#\n#####");
        advance_unmetered(&mut s, NIL).unwrap();
        advance_unmetered(&mut s, NIL).unwrap();
        assert_eq!(s.sprites()[0].pos, Pos::new(3, 1));
        advance_unmetered(&mut s, NIL).unwrap();
        assert_eq!(s.sprites()[0].pos, Pos::new(3, 2));
        advance_unmetered(&mut s, NIL).unwrap();
        assert_eq!(s.sprites()[0].pos, Pos::new(2, 2));
    }

    #[test]
    fn one_draw_per_alien_per_tick() {
        let mut s = load_level("invaders", 0, 3).unwrap();
        let aliens = s.count_sprites(SpriteKind::Alien) as u64;
        advance_unmetered(&mut s, NIL).unwrap();
        assert_eq!(s.rng_draws(), aliens);
    }

    #[test]
    fn bomb_hit_loses() {
        let mut s = level("#bomb_prob=1\n#march_period=100\n####\n#X.#\n#..#\n#A.#\n####");
        advance_unmetered(&mut s, NIL).unwrap();
        assert_eq!(s.count_sprites(SpriteKind::Bomb), 1);
        advance_unmetered(&mut s, NIL).unwrap();
        assert_eq!(s.status(), GameStatus::Loss);
    }

    #[test]
    fn same_seed_same_successor() {
        let a = load_level("invaders", 2, 7).unwrap();
        let b = load_level("invaders", 2, 7).unwrap();
        assert_eq!(a, b);
        let (mut a, mut b) = (a, b);
        for t in 0..40 {
            if a.status().is_terminal() {
                break;
            }
            advance_unmetered(&mut a, t % 4).unwrap();
            advance_unmetered(&mut b, t % 4).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn simulation_copies_can_diverge() {
        let real = load_level("invaders", 0, 1).unwrap();
        let mut agent = RngStream::new(9);
        let mut diverged = false;
        for _ in 0..20 {
            let (mut a, mut b) = (copy_state(&real, &mut agent), copy_state(&real, &mut agent));
            for _ in 0..60 {
                if a.status().is_terminal() || b.status().is_terminal() {
                    break;
                }
                advance_unmetered(&mut a, NIL).unwrap();
                advance_unmetered(&mut b, NIL).unwrap();
            }
            if a.sprites() != b.sprites() || a.status() != b.status() {
                diverged = true;
                break;
            }
        }
        assert!(diverged);
    }
}
