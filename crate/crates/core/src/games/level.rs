use super::{GameError, GameKind};
use crate::engine::DEFAULT_MAX_TICKS;

/// Parsed level text: `#key=value` header lines followed by a rectangular
/// ASCII grid.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelFile {
    pub params: LevelParams,
    pub rows: Vec<Vec<char>>,
    /// 1-based line number of the first grid row.
    pub first_row_line: usize,
}

/// Tunables a level header may override.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelParams {
    pub max_ticks: u32,
    /// invaders: per-alien bomb probability each tick.
    pub bomb_prob: f64,
    /// invaders: the alien rank moves once every this many ticks.
    pub march_period: u32,
    /// missile_defense: missiles descend once every this many ticks.
    pub missile_period: u32,
    /// zombie_survival: probability a zombie steps toward the avatar.
    pub chase_prob: f64,
    /// zombie_survival: zombies move once every this many ticks.
    pub zombie_period: u32,
}

impl Default for LevelParams {
    fn default() -> Self {
        Self {
            max_ticks: DEFAULT_MAX_TICKS,
            bomb_prob: 0.02,
            march_period: 3,
            missile_period: 2,
            chase_prob: 0.6,
            zombie_period: 2,
        }
    }
}

fn malformed(line: usize, column: usize, message: impl Into<String>) -> GameError {
    GameError::MalformedLevel {
        line,
        column,
        message: message.into(),
    }
}

fn is_header(line: &str) -> bool {
    line.starts_with('#') && line.contains('=')
}

pub fn parse_level(kind: GameKind, text: &str) -> Result<LevelFile, GameError> {
    let mut params = LevelParams::default();
    let mut rows: Vec<Vec<char>> = Vec::new();
    let mut first_row_line = 0;
    let allowed = kind.spec().extra_chars;
    let mut avatars = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            if rows.is_empty() {
                continue;
            }
            // Blank lines may only trail the grid.
            if text.lines().skip(idx).all(|l| l.trim().is_empty()) {
                break;
            }
            return Err(malformed(line_no, 1, "blank line inside grid"));
        }
        if is_header(line) {
            if !rows.is_empty() {
                return Err(malformed(line_no, 1, "header line after grid"));
            }
            parse_header(&mut params, &line[1..], line_no)?;
            continue;
        }
        if rows.is_empty() {
            first_row_line = line_no;
        }
        let chars: Vec<char> = line.chars().collect();
        if let Some(first) = rows.first() {
            if chars.len() != first.len() {
                return Err(malformed(
                    line_no,
                    chars.len().min(first.len()) + 1,
                    format!("row length {} differs from {}", chars.len(), first.len()),
                ));
            }
        }
        for (col, &c) in chars.iter().enumerate() {
            match c {
                '.' | '#' => {}
                'A' => avatars += 1,
                c if allowed.contains(c) => {}
                c => {
                    return Err(malformed(
                        line_no,
                        col + 1,
                        format!("unknown character `{c}` for {kind}"),
                    ))
                }
            }
        }
        rows.push(chars);
    }

    if rows.is_empty() {
        return Err(malformed(text.lines().count().max(1), 1, "empty grid"));
    }
    if avatars != 1 {
        return Err(malformed(
            first_row_line,
            1,
            format!("expected exactly one avatar `A`, found {avatars}"),
        ));
    }
    Ok(LevelFile {
        params,
        rows,
        first_row_line,
    })
}

fn parse_header(params: &mut LevelParams, body: &str, line: usize) -> Result<(), GameError> {
    let (key, value) = body.split_once('=').expect("header contains `=`");
    let (key, value) = (key.trim(), value.trim());
    let bad = |what: &str| malformed(line, 2, format!("invalid value `{value}` for {what}"));
    let period = |v: &str, what: &str| match v.parse::<u32>() {
        Ok(p) if p >= 1 => Ok(p),
        _ => Err(bad(what)),
    };
    let prob = |v: &str, what: &str| match v.parse::<f64>() {
        Ok(p) if (0.0..=1.0).contains(&p) => Ok(p),
        _ => Err(bad(what)),
    };
    match key {
        "max_ticks" => params.max_ticks = period(value, key)?,
        "bomb_prob" => params.bomb_prob = prob(value, key)?,
        "chase_prob" => params.chase_prob = prob(value, key)?,
        "march_period" => params.march_period = period(value, key)?,
        "missile_period" => params.missile_period = period(value, key)?,
        "zombie_period" => params.zombie_period = period(value, key)?,
        other => return Err(malformed(line, 2, format!("unknown header key `{other}`"))),
    }
    Ok(())
}
