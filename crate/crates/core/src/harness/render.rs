use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{BudgetStudy, SignificanceMatrix, SweepCell, SweepResult};
use crate::stats::F1Table;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subset {
    All,
    Deterministic,
    Stochastic,
}

impl Subset {
    pub const EACH: [Subset; 3] = [Subset::All, Subset::Deterministic, Subset::Stochastic];

    pub fn title(self) -> &'static str {
        match self {
            Subset::All => "all games",
            Subset::Deterministic => "deterministic games",
            Subset::Stochastic => "stochastic games",
        }
    }

    fn pick(self, cell: &SweepCell) -> Option<&super::CellStats> {
        match self {
            Subset::All => cell.all.as_ref(),
            Subset::Deterministic => cell.deterministic.as_ref(),
            Subset::Stochastic => cell.stochastic.as_ref(),
        }
    }
}

/// Win rate in `[0, 1]` as `"mean (se)"` percentages with two decimals.
pub fn format_cell(mean: f64, std_error: f64) -> String {
    format!("{:.2} ({:.2})", 100.0 * mean, 100.0 * std_error)
}

/// Markdown table, first column left-aligned and the rest right-aligned.
/// Every row must have `header.len()` cells.
fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|i| rows.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        let mut s = String::from("|");
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i == 0 {
                let _ = write!(s, " {c:<w$} |");
            } else {
                let _ = write!(s, " {c:>w$} |");
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header);
    out.push('|');
    for w in &widths {
        let _ = write!(out, "{}|", "-".repeat(w + 2));
    }
    out.push('\n');
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

/// Win-rate grid: one row per population size, one column per length.
pub fn render_grid(result: &SweepResult, subset: Subset) -> String {
    let mut header = vec!["P \\ L".to_string()];
    header.extend(result.lengths.iter().map(|l| l.to_string()));
    let rows: Vec<Vec<String>> = result
        .populations
        .iter()
        .map(|&p| {
            let mut row = vec![p.to_string()];
            row.extend(result.lengths.iter().map(|&l| {
                result
                    .cell(p, l)
                    .and_then(|c| subset.pick(c))
                    .map(|s| format_cell(s.win.mean, s.win.std_error))
                    .unwrap_or_else(|| "-".into())
            }));
            row
        })
        .collect();
    format!("Win rate (%), {}\n\n{}", subset.title(), table(&header, &rows))
}

pub fn render_budget(study: &BudgetStudy) -> String {
    let header: Vec<String> = BudgetStudy::COLUMNS.iter().map(|s| s.to_string()).collect();
    let rows: Vec<Vec<String>> = study
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![r.label.clone()];
            for i in 0..3 {
                row.push(
                    r.wins[i]
                        .map(|a| format_cell(a.mean, a.std_error))
                        .unwrap_or_else(|| "-".into()),
                );
                row.push(r.points[i].to_string());
            }
            row
        })
        .collect();
    table(&header, &rows)
}

pub fn render_f1(f1: &F1Table) -> String {
    let mut out = String::new();
    for g in &f1.games {
        let header: Vec<String> = ["Position", "Agent", "Win (%)", "Score", "Timesteps", "Points"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let rows: Vec<Vec<String>> = g
            .entries
            .iter()
            .map(|e| {
                vec![
                    e.position.to_string(),
                    e.agent.clone(),
                    format!("{:.2}", 100.0 * e.performance.win_rate),
                    format!("{:.2}", e.performance.score),
                    format!("{:.2}", e.performance.timesteps),
                    e.points.to_string(),
                ]
            })
            .collect();
        let _ = writeln!(out, "{}\n\n{}", g.game, table(&header, &rows));
    }
    let rows: Vec<Vec<String>> = f1
        .standings()
        .into_iter()
        .map(|(a, p)| vec![a.to_string(), p.to_string()])
        .collect();
    let _ = write!(out, "Total\n\n{}", table(&["Agent".into(), "Points".into()], &rows));
    out
}

/// p-values of the win (upper triangle) and score (lower triangle) tests;
/// `*` marks significance at the matrix alpha.
pub fn render_significance(matrices: &[SignificanceMatrix]) -> String {
    let mut out = String::new();
    for m in matrices {
        let mut header = vec![String::new()];
        header.extend(m.agents.iter().cloned());
        let rows: Vec<Vec<String>> = (0..m.agents.len())
            .map(|i| {
                let mut row = vec![m.agents[i].clone()];
                row.extend((0..m.agents.len()).map(|j| {
                    use std::cmp::Ordering::*;
                    let (p, sig) = match i.cmp(&j) {
                        Equal => return "-".into(),
                        Less => (m.wins[i][j].p_value, m.wins_significant(i, j)),
                        Greater => (m.scores[i][j].p_value, m.scores_significant(i, j)),
                    };
                    format!("{p:.4}{}", if sig { "*" } else { "" })
                }));
                row
            })
            .collect();
        let _ = writeln!(
            out,
            "{} (upper: wins, lower: scores, * p < {})\n\n{}",
            m.game,
            m.alpha,
            table(&header, &rows)
        );
    }
    out
}
