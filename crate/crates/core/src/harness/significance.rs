use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::RunRecord;
use crate::stats::{mann_whitney, MannWhitneyResult};

/// Pairwise Mann-Whitney tests between the agents of one game.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignificanceMatrix {
    pub game: String,
    pub agents: Vec<String>,
    pub alpha: f64,
    /// `wins[i][j]` compares win indicators of `agents[i]` against `agents[j]`.
    pub wins: Vec<Vec<MannWhitneyResult>>,
    pub scores: Vec<Vec<MannWhitneyResult>>,
}

impl SignificanceMatrix {
    pub fn wins_significant(&self, i: usize, j: usize) -> bool {
        self.wins[i][j].p_value < self.alpha
    }

    pub fn scores_significant(&self, i: usize, j: usize) -> bool {
        self.scores[i][j].p_value < self.alpha
    }
}

/// One matrix per game, agents in label order.
pub fn significance_matrix(records: &[RunRecord], alpha: f64) -> Vec<SignificanceMatrix> {
    let mut grouped: BTreeMap<&str, BTreeMap<&str, (Vec<f64>, Vec<f64>)>> = BTreeMap::new();
    for r in records {
        let e = grouped.entry(&r.game).or_default().entry(&r.agent).or_default();
        e.0.push(r.win as f64);
        e.1.push(r.score);
    }
    grouped
        .into_iter()
        .map(|(game, agents)| {
            let names: Vec<String> = agents.keys().map(|s| s.to_string()).collect();
            let samples: Vec<&(Vec<f64>, Vec<f64>)> = agents.values().collect();
            let grid = |pick: fn(&(Vec<f64>, Vec<f64>)) -> &Vec<f64>| {
                samples
                    .iter()
                    .map(|a| samples.iter().map(|b| mann_whitney(pick(a), pick(b))).collect())
                    .collect()
            };
            SignificanceMatrix {
                game: game.to_string(),
                agents: names,
                alpha,
                wins: grid(|s| &s.0),
                scores: grid(|s| &s.1),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(agent: &str, win: u8, score: f64) -> RunRecord {
        RunRecord {
            agent: agent.into(),
            game: "invaders".into(),
            level: 0,
            repeat: 0,
            seed: 0,
            win,
            score,
            timesteps: 10,
            decisions: 10,
            total_advance_calls: 0,
            wall_time_ms: 0,
            agent_error: false,
        }
    }

    #[test]
    fn symmetric_with_self_comparisons_insignificant() {
        let mut records = Vec::new();
        for i in 0..100 {
            records.push(rec("weak", (i < 29) as u8, i as f64));
            records.push(rec("strong", (i < 98) as u8, (i + 40) as f64));
        }
        let m = &significance_matrix(&records, 0.05)[0];
        assert_eq!(m.agents, vec!["strong", "weak"]);
        for i in 0..2 {
            assert!(m.wins[i][i].p_value >= 0.99);
            for j in 0..2 {
                assert!((m.wins[i][j].p_value - m.wins[j][i].p_value).abs() < 1e-12);
            }
        }
        assert!(m.wins_significant(0, 1));
        assert!(m.wins[0][1].p_value < 1e-3);
        assert!(m.scores_significant(1, 0));
    }
}
