use serde::{Deserialize, Serialize};

use super::sweep::{Aggregate, GameCell};
use super::{f1_table, run_experiment, Audit, Contender, ExperimentConfig, HarnessError, RunRecord};
use crate::agents::AgentSpec;
use crate::games::{GameKind, Nature};

pub const DEFAULT_BUDGETS: [u64; 4] = [480, 960, 1440, 1920];

/// One algorithm row: win rate and F1 points over all (T), deterministic (D)
/// and stochastic (S) games.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BudgetRow {
    pub label: String,
    pub wins: [Option<Aggregate>; 3],
    pub points: [u32; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BudgetStudy {
    pub rows: Vec<BudgetRow>,
    pub audit: Audit,
}

impl BudgetStudy {
    pub const COLUMNS: [&'static str; 7] = [
        "Algorithm",
        "Average Wins (T)",
        "Points (T)",
        "Average Wins (D)",
        "Points (D)",
        "Average Wins (S)",
        "Points (S)",
    ];

    /// Contenders of the study: random search at the first budget, the same
    /// configuration evolved at the larger budgets, and OLMCTS at the first.
    pub fn contenders(budgets: &[u64]) -> Vec<Contender> {
        let base = budgets[0];
        let mut v = vec![Contender::labelled(format!("RHEA/RS-{base}"), AgentSpec::RandomSearch, base)];
        for &b in &budgets[1..] {
            v.push(Contender::labelled(format!("RHEA-{b}"), AgentSpec::RandomSearch, b));
        }
        v.push(Contender::labelled(format!("OLMCTS-{base}"), AgentSpec::olmcts_default(), base));
        v
    }

    /// Builds the table from records. Rows are ordered by budget, with
    /// OLMCTS rows last.
    pub fn from_records(records: &[RunRecord]) -> BudgetStudy {
        let mut labels: Vec<String> = records.iter().map(|r| r.agent.clone()).collect();
        labels.sort_by_key(|l| row_key(l));
        labels.dedup();
        let subsets: [Option<Nature>; 3] = [None, Some(Nature::Deterministic), Some(Nature::Stochastic)];
        let in_subset = |game: &str, subset: Option<Nature>| {
            subset.is_none_or(|n| GameKind::from_id(game).map(|k| k.nature() == n).unwrap_or(false))
        };
        let rows = labels
            .iter()
            .map(|label| {
                let wins = subsets.map(|subset| {
                    let mut games: Vec<&str> = records
                        .iter()
                        .filter(|r| &r.agent == label && in_subset(&r.game, subset))
                        .map(|r| r.game.as_str())
                        .collect();
                    games.sort_unstable();
                    games.dedup();
                    let summaries: Vec<_> = games
                        .iter()
                        .map(|g| {
                            let rs: Vec<&RunRecord> =
                                records.iter().filter(|r| &r.agent == label && r.game == *g).collect();
                            GameCell::from_records(&rs).win
                        })
                        .collect();
                    Aggregate::over(&summaries)
                });
                let points = subsets.map(|subset| {
                    let subset_records: Vec<RunRecord> =
                        records.iter().filter(|r| in_subset(&r.game, subset)).cloned().collect();
                    f1_table(&subset_records).totals.get(label).copied().unwrap_or(0)
                });
                BudgetRow {
                    label: label.clone(),
                    wins,
                    points,
                }
            })
            .collect();
        BudgetStudy {
            rows,
            audit: Audit::default(),
        }
    }
}

fn row_key(label: &str) -> (bool, u64, String) {
    let budget = label.rsplit('-').next().and_then(|b| b.parse().ok()).unwrap_or(u64::MAX);
    (label.starts_with("OLMCTS"), budget, label.to_string())
}

/// Random search at `budgets[0]`, evolution at the larger budgets, and OLMCTS
/// (depth 10) at `budgets[0]`.
pub fn run_budget_study(cfg: &ExperimentConfig, budgets: &[u64]) -> Result<(BudgetStudy, Vec<RunRecord>), HarnessError> {
    if budgets.is_empty() {
        return Err(HarnessError::Config("at least one budget is required".into()));
    }
    let out = run_experiment(cfg, &BudgetStudy::contenders(budgets))?;
    let mut study = BudgetStudy::from_records(&out.records);
    study.audit = out.audit;
    Ok((study, out.records))
}
