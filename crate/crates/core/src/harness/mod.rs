//! Experiment protocol: episodes, sweeps, the budget study, significance
//! matrices and result files.
//!
//! Each run cell `(agent, game, level, repeat)` is independent and fully
//! sequential; its seeds are derived from the master seed and the cell key,
//! never drawn from a shared stream, so results do not depend on scheduling.

mod budget;
mod config;
mod io;
mod render;
mod run;
mod significance;
mod sweep;

use thiserror::Error;

use crate::agents::AgentError;
use crate::games::GameError;

pub use budget::{run_budget_study, BudgetRow, BudgetStudy, DEFAULT_BUDGETS};
pub use config::{ExperimentConfig, GameSelector, SweepGrid, PAPER_LENGTHS, PAPER_POPULATIONS};
pub use io::{new_results_dir, read_results, write_results, Format, ResultsFile, CSV_HEADER};
pub use render::{format_cell, render_budget, render_f1, render_grid, render_significance, Subset};
pub use run::{
    f1_table, run_experiment, run_game, Audit, Contender, ExperimentOutput, RunOutcome, RunRecord, RunSpec,
};
pub use significance::{significance_matrix, SignificanceMatrix};
pub use sweep::{run_sweep, Aggregate, CellStats, GameCell, SweepCell, SweepResult};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Agent(#[from] AgentError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("invalid config: {0}")]
    Config(String),
}
