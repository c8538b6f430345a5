use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{run_experiment, Audit, Contender, ExperimentConfig, HarnessError, RunRecord};
use crate::agents::AgentSpec;
use crate::games::{GameKind, Nature};
use crate::stats::{summarize, SampleSummary};

/// Mean of per-game means, with the average of per-game standard errors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub mean: f64,
    pub std_error: f64,
    pub games: usize,
}

impl Aggregate {
    pub(crate) fn over(summaries: &[SampleSummary]) -> Option<Aggregate> {
        if summaries.is_empty() {
            return None;
        }
        let k = summaries.len() as f64;
        Some(Aggregate {
            mean: summaries.iter().map(|s| s.mean).sum::<f64>() / k,
            std_error: summaries.iter().map(|s| s.std_error).sum::<f64>() / k,
            games: summaries.len(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameCell {
    pub win: SampleSummary,
    pub score: SampleSummary,
    pub timesteps: SampleSummary,
}

impl GameCell {
    pub fn from_records(records: &[&RunRecord]) -> GameCell {
        let col = |f: fn(&RunRecord) -> f64| summarize(&records.iter().map(|r| f(r)).collect::<Vec<_>>());
        GameCell {
            win: col(|r| r.win as f64),
            score: col(|r| r.score),
            timesteps: col(|r| r.timesteps as f64),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellStats {
    pub win: Aggregate,
    pub score: Aggregate,
    pub timesteps: Aggregate,
    pub records: usize,
}

impl CellStats {
    /// Aggregates the given per-game cells; `None` when there are none.
    pub fn over<'a>(cells: impl IntoIterator<Item = &'a GameCell>) -> Option<CellStats> {
        let cells: Vec<&GameCell> = cells.into_iter().collect();
        let pick = |f: fn(&GameCell) -> SampleSummary| cells.iter().map(|c| f(c)).collect::<Vec<_>>();
        Some(CellStats {
            win: Aggregate::over(&pick(|c| c.win))?,
            score: Aggregate::over(&pick(|c| c.score))?,
            timesteps: Aggregate::over(&pick(|c| c.timesteps))?,
            records: cells.iter().map(|c| c.win.n).sum(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub population: usize,
    pub length: usize,
    pub all: Option<CellStats>,
    pub deterministic: Option<CellStats>,
    pub stochastic: Option<CellStats>,
    pub per_game: BTreeMap<String, GameCell>,
}

/// P x L grid of win rate, score and timestep summaries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub populations: Vec<usize>,
    pub lengths: Vec<usize>,
    /// Row-major: population outer, length inner.
    pub cells: Vec<SweepCell>,
    pub audit: Audit,
}

impl SweepResult {
    pub fn cell(&self, population: usize, length: usize) -> Option<&SweepCell> {
        self.cells
            .iter()
            .find(|c| c.population == population && c.length == length)
    }

    /// Rebuilds the grid from records whose agent labels are `rhea:P=..,L=..`.
    /// Records of other agents are ignored.
    pub fn from_records(records: &[RunRecord]) -> SweepResult {
        let mut by_cell: BTreeMap<(usize, usize), BTreeMap<String, Vec<&RunRecord>>> = BTreeMap::new();
        for r in records {
            if let Ok(AgentSpec::Rhea { population, length }) = r.agent.parse::<AgentSpec>() {
                by_cell
                    .entry((population, length))
                    .or_default()
                    .entry(r.game.clone())
                    .or_default()
                    .push(r);
            }
        }
        let mut populations: Vec<usize> = by_cell.keys().map(|k| k.0).collect();
        let mut lengths: Vec<usize> = by_cell.keys().map(|k| k.1).collect();
        populations.dedup();
        lengths.sort_unstable();
        lengths.dedup();
        let cells = by_cell
            .into_iter()
            .map(|((population, length), games)| {
                let per_game: BTreeMap<String, GameCell> = games
                    .into_iter()
                    .map(|(g, rs)| {
                        let cell = GameCell::from_records(&rs);
                        (g, cell)
                    })
                    .collect();
                let of_nature = |n: Nature| {
                    CellStats::over(
                        per_game
                            .iter()
                            .filter(|(g, _)| GameKind::from_id(g).map(|k| k.nature() == n).unwrap_or(false))
                            .map(|(_, c)| c),
                    )
                };
                SweepCell {
                    population,
                    length,
                    all: CellStats::over(per_game.values()),
                    deterministic: of_nature(Nature::Deterministic),
                    stochastic: of_nature(Nature::Stochastic),
                    per_game,
                }
            })
            .collect();
        SweepResult {
            populations,
            lengths,
            cells,
            audit: Audit::default(),
        }
    }
}

/// Runs `rhea:P=p,L=l` for every `(p, l)` of the grid on the configured games,
/// levels and repeats. Returns the grid and the raw records.
pub fn run_sweep(
    cfg: &ExperimentConfig,
    populations: &[usize],
    lengths: &[usize],
) -> Result<(SweepResult, Vec<RunRecord>), HarnessError> {
    if populations.is_empty() || lengths.is_empty() {
        return Err(HarnessError::Config("sweep sets must be non-empty".into()));
    }
    let contenders: Vec<Contender> = populations
        .iter()
        .flat_map(|&p| lengths.iter().map(move |&l| (p, l)))
        .map(|(p, l)| Contender::new(AgentSpec::rhea(p, l), cfg.budget))
        .collect();
    let out = run_experiment(cfg, &contenders)?;
    let mut result = SweepResult::from_records(&out.records);
    result.audit = out.audit;
    Ok((result, out.records))
}
