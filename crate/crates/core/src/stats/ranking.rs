use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Points for positions 1 to 10; every later position scores 0.
pub const F1_POINTS: [u32; 10] = [25, 18, 15, 12, 10, 8, 6, 4, 2, 1];

pub fn f1_points(position: usize) -> u32 {
    assert!(position >= 1, "positions start at 1");
    F1_POINTS.get(position - 1).copied().unwrap_or(0)
}

/// Per-game means used to order agents.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Performance {
    pub win_rate: f64,
    pub score: f64,
    pub timesteps: f64,
}

impl Performance {
    /// Better first: more wins, then higher score, then fewer timesteps.
    fn compare(&self, other: &Self) -> Ordering {
        other
            .win_rate
            .total_cmp(&self.win_rate)
            .then(other.score.total_cmp(&self.score))
            .then(self.timesteps.total_cmp(&other.timesteps))
    }
}

/// Standard competition ranking ("1224"): position of each entry, in input
/// order. Entries equal on all three keys share the better position.
pub fn rank_positions(perfs: &[Performance]) -> Vec<usize> {
    perfs
        .iter()
        .map(|p| 1 + perfs.iter().filter(|q| q.compare(p) == Ordering::Less).count())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    pub agent: String,
    pub position: usize,
    pub points: u32,
    pub performance: Performance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameRanking {
    pub game: String,
    /// Sorted by position, then agent name.
    pub entries: Vec<RankEntry>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct F1Table {
    pub games: Vec<GameRanking>,
    pub totals: BTreeMap<String, u32>,
}

impl F1Table {
    /// Ranks the agents of every game independently and sums their points.
    pub fn build<'a, I>(games: I) -> F1Table
    where
        I: IntoIterator<Item = (&'a str, Vec<(String, Performance)>)>,
    {
        let mut table = F1Table::default();
        for (game, agents) in games {
            let perfs: Vec<Performance> = agents.iter().map(|(_, p)| *p).collect();
            let positions = rank_positions(&perfs);
            let mut entries: Vec<RankEntry> = agents
                .into_iter()
                .zip(positions)
                .map(|((agent, performance), position)| RankEntry {
                    agent,
                    position,
                    points: f1_points(position),
                    performance,
                })
                .collect();
            entries.sort_by(|a, b| a.position.cmp(&b.position).then_with(|| a.agent.cmp(&b.agent)));
            for e in &entries {
                *table.totals.entry(e.agent.clone()).or_insert(0) += e.points;
            }
            table.games.push(GameRanking {
                game: game.to_string(),
                entries,
            });
        }
        table
    }

    /// Agents by total points, highest first (ties by name).
    pub fn standings(&self) -> Vec<(&str, u32)> {
        let mut v: Vec<(&str, u32)> = self.totals.iter().map(|(a, &p)| (a.as_str(), p)).collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
        v
    }
}
