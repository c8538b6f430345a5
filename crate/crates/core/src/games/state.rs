use std::fmt::Write as _;

use super::{butterfly_catch, corridor_race, invaders, maze_escape, missile_defense, zombie_survival};
use super::{GameKind, LevelFile, LevelParams, Nature, TimeoutRule};
use crate::engine::{derive_seed, Action, ActionSet, ForwardModel, GameStatus, RngStream};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub x: i32,
    pub y: i32,
}

impl Pos {
    pub fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    pub fn offset(self, (dx, dy): (i32, i32)) -> Pos {
        Pos::new(self.x + dx, self.y + dy)
    }

    pub fn manhattan(self, other: Pos) -> i32 {
        (self.x - other.x).abs() + (self.y - other.y).abs()
    }
}

/// Static terrain. Anything outside the grid reads as `Wall`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cell {
    Floor,
    Wall,
    Exit,
    Hole,
    City,
    Cocoon,
    Honey,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpriteKind {
    /// Pushable block (maze_escape).
    Block,
    /// Falling missile (missile_defense).
    Missile,
    Alien,
    /// Alien bomb, falls one cell per tick.
    Bomb,
    /// Avatar shot, rises one cell per tick.
    Shot,
    Butterfly,
    Zombie,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sprite {
    pub id: u32,
    pub kind: SpriteKind,
    pub pos: Pos,
    /// Position at the start of the current tick, for swap collisions.
    pub prev: Pos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Avatar {
    pub pos: Pos,
    pub prev: Pos,
    pub facing: Action,
    /// Items collected (honey in zombie_survival).
    pub resources: u32,
}

/// Per-episode event counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    pub initial_butterflies: u32,
    pub caught: u32,
    pub spawned: u32,
    pub kills: u32,
    pub cities_lost: u32,
    pub missiles_destroyed: u32,
    pub blocks_sunk: u32,
}

/// Snapshot of one bundled game in progress.
#[derive(Clone, Debug, PartialEq)]
pub struct GridState {
    pub(super) kind: GameKind,
    pub(super) level: usize,
    pub(super) width: i32,
    pub(super) height: i32,
    pub(super) cells: Vec<Cell>,
    pub(super) avatar: Avatar,
    pub(super) sprites: Vec<Sprite>,
    pub(super) next_id: u32,
    pub(super) score: f64,
    pub(super) tick: u32,
    pub(super) max_ticks: u32,
    pub(super) status: GameStatus,
    pub(super) params: LevelParams,
    pub(super) counters: Counters,
    /// Horizontal march direction of the invaders rank.
    pub(super) march_dir: i32,
    pub(super) rng: RngStream,
}

impl GridState {
    pub(super) fn from_level(kind: GameKind, level: usize, file: &LevelFile, master_seed: u64) -> Self {
        let height = file.rows.len() as i32;
        let width = file.rows[0].len() as i32;
        let mut cells = Vec::with_capacity((width * height) as usize);
        let mut sprites = Vec::new();
        let mut avatar_pos = Pos::new(0, 0);
        let mut next_id = 0;
        let mut spawn = |kind: SpriteKind, pos: Pos, sprites: &mut Vec<Sprite>| {
            sprites.push(Sprite {
                id: next_id,
                kind,
                pos,
                prev: pos,
            });
            next_id += 1;
        };
        for (y, row) in file.rows.iter().enumerate() {
            for (x, &c) in row.iter().enumerate() {
                let pos = Pos::new(x as i32, y as i32);
                let cell = match (kind, c) {
                    (_, '#') => Cell::Wall,
                    (_, 'E') => Cell::Exit,
                    (GameKind::MazeEscape, 'O') => Cell::Hole,
                    (GameKind::ButterflyCatch, 'O') => Cell::Cocoon,
                    (_, 'C') => Cell::City,
                    (_, 'H') => Cell::Honey,
                    (_, 'A') => {
                        avatar_pos = pos;
                        Cell::Floor
                    }
                    (_, c) => {
                        let sprite = match c {
                            'B' => Some(SpriteKind::Block),
                            'M' => Some(SpriteKind::Missile),
                            'X' => Some(SpriteKind::Alien),
                            'F' => Some(SpriteKind::Butterfly),
                            'Z' => Some(SpriteKind::Zombie),
                            _ => None,
                        };
                        if let Some(s) = sprite {
                            spawn(s, pos, &mut sprites);
                        }
                        Cell::Floor
                    }
                };
                cells.push(cell);
            }
        }
        let seed = derive_seed(master_seed, &format!("{}/{}", kind.id(), level));
        let initial_butterflies = sprites
            .iter()
            .filter(|s| s.kind == SpriteKind::Butterfly)
            .count() as u32;
        GridState {
            kind,
            level,
            width,
            height,
            cells,
            avatar: Avatar {
                pos: avatar_pos,
                prev: avatar_pos,
                facing: Action::Nil,
                resources: 0,
            },
            sprites,
            next_id,
            score: 0.0,
            tick: 0,
            max_ticks: file.params.max_ticks,
            status: GameStatus::Ongoing,
            params: file.params.clone(),
            counters: Counters {
                initial_butterflies,
                ..Counters::default()
            },
            march_dir: 1,
            rng: RngStream::new(seed),
        }
    }

    pub fn kind(&self) -> GameKind {
        self.kind
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn width(&self) -> i32 {
        self.width
    }

    pub fn height(&self) -> i32 {
        self.height
    }

    pub fn avatar(&self) -> &Avatar {
        &self.avatar
    }

    pub fn sprites(&self) -> &[Sprite] {
        &self.sprites
    }

    pub fn counters(&self) -> &Counters {
        &self.counters
    }

    pub fn params(&self) -> &LevelParams {
        &self.params
    }

    /// Draws taken from the game's own random stream so far.
    pub fn rng_draws(&self) -> u64 {
        self.rng.draws()
    }

    pub fn cell(&self, pos: Pos) -> Cell {
        if pos.x < 0 || pos.y < 0 || pos.x >= self.width || pos.y >= self.height {
            return Cell::Wall;
        }
        self.cells[(pos.y * self.width + pos.x) as usize]
    }

    pub(super) fn set_cell(&mut self, pos: Pos, cell: Cell) {
        let idx = (pos.y * self.width + pos.x) as usize;
        self.cells[idx] = cell;
    }

    pub fn count_cells(&self, cell: Cell) -> usize {
        self.cells.iter().filter(|&&c| c == cell).count()
    }

    pub fn count_sprites(&self, kind: SpriteKind) -> usize {
        self.sprites.iter().filter(|s| s.kind == kind).count()
    }

    pub(super) fn sprite_at(&self, pos: Pos, kind: SpriteKind) -> Option<usize> {
        self.sprites.iter().position(|s| s.kind == kind && s.pos == pos)
    }

    pub(super) fn add_sprite(&mut self, kind: SpriteKind, pos: Pos) {
        self.sprites.push(Sprite {
            id: self.next_id,
            kind,
            pos,
            prev: pos,
        });
        self.next_id += 1;
    }

    /// Moves the avatar one step unless `blocked` says the target cell stops it.
    /// Returns the target cell when the move happened.
    pub(super) fn move_avatar(&mut self, action: Action, blocked: impl Fn(Cell) -> bool) -> Option<Cell> {
        let delta = action.delta()?;
        self.avatar.facing = action;
        let target = self.avatar.pos.offset(delta);
        let cell = self.cell(target);
        if blocked(cell) {
            return None;
        }
        self.avatar.pos = target;
        Some(cell)
    }

    /// True when the sprite and the avatar share a cell or swapped cells
    /// during this tick.
    pub(super) fn touches_avatar(&self, s: &Sprite) -> bool {
        let a = &self.avatar;
        s.pos == a.pos || (s.prev == a.pos && s.pos == a.prev && s.pos != s.prev)
    }

    /// `(tick, score, status, avatar position)`, the replay fingerprint.
    pub fn fingerprint(&self) -> (u32, f64, GameStatus, Pos) {
        (self.tick, self.score, self.status, self.avatar.pos)
    }

    /// ASCII picture of the current state using level-file characters.
    pub fn render(&self) -> String {
        let mut grid: Vec<Vec<char>> = (0..self.height)
            .map(|y| {
                (0..self.width)
                    .map(|x| match self.cell(Pos::new(x, y)) {
                        Cell::Floor => '.',
                        Cell::Wall => '#',
                        Cell::Exit => 'E',
                        Cell::Hole | Cell::Cocoon => 'O',
                        Cell::City => 'C',
                        Cell::Honey => 'H',
                    })
                    .collect()
            })
            .collect();
        for s in &self.sprites {
            let c = match s.kind {
                SpriteKind::Block => 'B',
                SpriteKind::Missile => 'M',
                SpriteKind::Alien => 'X',
                SpriteKind::Bomb => '*',
                SpriteKind::Shot => '|',
                SpriteKind::Butterfly => 'F',
                SpriteKind::Zombie => 'Z',
            };
            grid[s.pos.y as usize][s.pos.x as usize] = c;
        }
        let a = self.avatar.pos;
        grid[a.y as usize][a.x as usize] = 'A';
        let mut out = String::new();
        for row in grid {
            let _ = writeln!(out, "{}", row.into_iter().collect::<String>());
        }
        out
    }
}

impl ForwardModel for GridState {
    fn action_set(&self) -> &ActionSet {
        self.kind.action_set()
    }

    fn status(&self) -> GameStatus {
        self.status
    }

    fn score(&self) -> f64 {
        self.score
    }

    fn tick(&self) -> u32 {
        self.tick
    }

    fn max_ticks(&self) -> u32 {
        self.max_ticks
    }

    fn is_stochastic(&self) -> bool {
        self.kind.nature() == Nature::Stochastic
    }

    fn reseed(&mut self, rng: RngStream) {
        self.rng = rng;
    }

    fn apply_rules(&mut self, action: usize) {
        let action = self.kind.action_set().get(action).expect("index checked by engine");
        self.avatar.prev = self.avatar.pos;
        for s in &mut self.sprites {
            s.prev = s.pos;
        }
        match self.kind {
            GameKind::CorridorRace => corridor_race::step(self, action),
            GameKind::MissileDefense => missile_defense::step(self, action),
            GameKind::MazeEscape => maze_escape::step(self, action),
            GameKind::Invaders => invaders::step(self, action),
            GameKind::ButterflyCatch => butterfly_catch::step(self, action),
            GameKind::ZombieSurvival => zombie_survival::step(self, action),
        }
        self.tick += 1;
        if self.status == GameStatus::Ongoing && self.tick >= self.max_ticks {
            self.status = match self.kind.spec().timeout_rule {
                TimeoutRule::TimeoutWin => GameStatus::Win,
                TimeoutRule::TimeoutLoss => GameStatus::Loss,
            };
        }
    }
}

/// Cardinal displacements in the fixed order used for random steps.
pub(super) const DIRECTIONS: [(i32, i32); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];
