use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ExperimentConfig, HarnessError};
use crate::agents::{AgentSpec, DecisionTrace};
use crate::engine::{advance_unmetered, derive_seed, ForwardModel, GameStatus, RngStream};
use crate::games::{load_kind, GameKind};
use crate::stats::{summarize, F1Table, Performance};

/// An agent entered in an experiment under a display label, with its budget.
#[derive(Clone, Debug, PartialEq)]
pub struct Contender {
    pub label: String,
    pub agent: AgentSpec,
    pub budget: u64,
}

impl Contender {
    /// Labelled by its agent spec.
    pub fn new(agent: AgentSpec, budget: u64) -> Self {
        Self {
            label: agent.to_string(),
            agent,
            budget,
        }
    }

    pub fn labelled(label: impl Into<String>, agent: AgentSpec, budget: u64) -> Self {
        Self {
            label: label.into(),
            agent,
            budget,
        }
    }
}

/// One episode to play.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSpec {
    pub contender: Contender,
    pub game: GameKind,
    pub level: usize,
    pub repeat: u32,
    /// Run seed; split into disjoint game and agent streams.
    pub seed: u64,
}

impl RunSpec {
    /// Seed of the cell `(agent, game, level, repeat)` under `master_seed`.
    pub fn derive_seed(master_seed: u64, label: &str, game: GameKind, level: usize, repeat: u32) -> u64 {
        derive_seed(master_seed, &format!("{label}/{game}/{level}/{repeat}"))
    }
}

/// Outcome of one episode. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub agent: String,
    pub game: String,
    pub level: usize,
    pub repeat: u32,
    pub seed: u64,
    pub win: u8,
    pub score: f64,
    pub timesteps: u32,
    pub decisions: u32,
    pub total_advance_calls: u64,
    pub wall_time_ms: u64,
    /// The agent failed; the episode was recorded as a loss.
    #[serde(default)]
    pub agent_error: bool,
}

impl RunRecord {
    /// Copy with the only wall-clock field zeroed, for golden comparisons.
    pub fn without_timing(&self) -> RunRecord {
        RunRecord {
            wall_time_ms: 0,
            ..self.clone()
        }
    }
}

/// Per-decision budget audit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Audit {
    pub decisions: u64,
    /// Decisions that used more calls than their cap.
    pub cap_violations: u64,
    /// Decisions without terminal cutoffs that left more than `L - 1` calls unused.
    pub fullness_violations: u64,
    /// Decisions exempt from the fullness check (terminal cutoffs, no horizon).
    pub fullness_exempt: u64,
}

impl Audit {
    pub fn record(&mut self, trace: &DecisionTrace) {
        self.decisions += 1;
        if trace.advance_calls_used > trace.budget {
            self.cap_violations += 1;
        }
        match trace.horizon {
            Some(horizon) if trace.terminal_cutoffs == 0 => {
                let floor = trace.budget.saturating_sub(horizon as u64 - 1);
                if trace.advance_calls_used < floor {
                    self.fullness_violations += 1;
                }
            }
            _ => self.fullness_exempt += 1,
        }
    }

    pub fn merge(&mut self, other: &Audit) {
        self.decisions += other.decisions;
        self.cap_violations += other.cap_violations;
        self.fullness_violations += other.fullness_violations;
        self.fullness_exempt += other.fullness_exempt;
    }

    pub fn is_clean(&self) -> bool {
        self.cap_violations == 0 && self.fullness_violations == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    pub record: RunRecord,
    pub audit: Audit,
}

/// Plays one episode. Each tick the agent plans on a copy of the real state
/// with a fresh budget; the chosen action is applied to the real game without
/// metering. `observer` sees every decision trace.
pub fn run_game(spec: &RunSpec, mut observer: impl FnMut(&DecisionTrace)) -> Result<RunOutcome, HarnessError> {
    let started = Instant::now();
    let root_rng = RngStream::new(spec.seed);
    let mut state = load_kind(spec.game, spec.level, root_rng.derive("game").seed())?;
    let mut agent_rng = root_rng.derive("agent");
    let mut audit = Audit::default();
    let mut decisions = 0u32;
    let mut calls = 0u64;
    let mut agent_error = false;
    let budget = spec.contender.budget;

    while state.status() == GameStatus::Ongoing {
        let view = state.clone();
        let agent = &spec.contender.agent;
        let rng = &mut agent_rng;
        let decided = catch_unwind(AssertUnwindSafe(|| agent.decide(&view, budget, rng)));
        let decision = match decided {
            Ok(Ok(d)) => d,
            Ok(Err(e)) => {
                log::warn!("{} failed on {} level {}: {e}", spec.contender.label, spec.game, spec.level);
                agent_error = true;
                break;
            }
            Err(_) => {
                log::warn!("{} panicked on {} level {}", spec.contender.label, spec.game, spec.level);
                agent_error = true;
                break;
            }
        };
        decisions += 1;
        calls += decision.trace.advance_calls_used;
        audit.record(&decision.trace);
        observer(&decision.trace);
        if let Err(e) = advance_unmetered(&mut state, decision.action) {
            log::warn!("{} chose an illegal action: {e}", spec.contender.label);
            agent_error = true;
            break;
        }
    }

    let win = !agent_error && state.status() == GameStatus::Win;
    Ok(RunOutcome {
        record: RunRecord {
            agent: spec.contender.label.clone(),
            game: spec.game.id().to_string(),
            level: spec.level,
            repeat: spec.repeat,
            seed: spec.seed,
            win: win as u8,
            score: state.score(),
            timesteps: state.tick(),
            decisions,
            total_advance_calls: calls,
            wall_time_ms: started.elapsed().as_millis() as u64,
            agent_error,
        },
        audit,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentOutput {
    /// In `(contender, game, level, repeat)` order.
    pub records: Vec<RunRecord>,
    pub audit: Audit,
}

/// Plays every `(contender, game, level, repeat)` cell of `cfg`, in parallel
/// across cells.
pub fn run_experiment(cfg: &ExperimentConfig, contenders: &[Contender]) -> Result<ExperimentOutput, HarnessError> {
    cfg.validate()?;
    for c in contenders {
        if let Some(r) = c.agent.rhea_config(c.budget) {
            if r.overcommitted() {
                log::warn!(
                    "{}: P*L = {} exceeds the budget {}; initialization will be cut short",
                    c.label,
                    r.population_size * r.individual_length,
                    c.budget
                );
            }
        }
    }
    let games = cfg.games.games();
    let mut specs = Vec::new();
    for c in contenders {
        for &game in &games {
            for &level in &cfg.levels {
                for repeat in 0..cfg.repeats {
                    specs.push(RunSpec {
                        contender: c.clone(),
                        game,
                        level,
                        repeat,
                        seed: RunSpec::derive_seed(cfg.master_seed, &c.label, game, level, repeat),
                    });
                }
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism.max(1))
        .build()
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    let outcomes: Vec<Result<RunOutcome, HarnessError>> =
        pool.install(|| specs.par_iter().map(|s| run_game(s, |_| {})).collect());
    let mut records = Vec::with_capacity(outcomes.len());
    let mut audit = Audit::default();
    for o in outcomes {
        let o = o?;
        audit.merge(&o.audit);
        records.push(o.record);
    }
    Ok(ExperimentOutput { records, audit })
}

/// Per-game performance of each agent, keyed by game then agent label.
pub(crate) fn performances(records: &[RunRecord]) -> BTreeMap<String, BTreeMap<String, Performance>> {
    let mut grouped: BTreeMap<String, BTreeMap<String, Vec<&RunRecord>>> = BTreeMap::new();
    for r in records {
        grouped
            .entry(r.game.clone())
            .or_default()
            .entry(r.agent.clone())
            .or_default()
            .push(r);
    }
    grouped
        .into_iter()
        .map(|(game, agents)| {
            let perfs = agents
                .into_iter()
                .map(|(agent, rs)| {
                    let col = |f: &dyn Fn(&RunRecord) -> f64| summarize(&rs.iter().map(|r| f(r)).collect::<Vec<_>>()).mean;
                    let perf = Performance {
                        win_rate: col(&|r| r.win as f64),
                        score: col(&|r| r.score),
                        timesteps: col(&|r| r.timesteps as f64),
                    };
                    (agent, perf)
                })
                .collect();
            (game, perfs)
        })
        .collect()
}

/// F1 standings over the games present in `records`.
pub fn f1_table(records: &[RunRecord]) -> F1Table {
    let perfs = performances(records);
    F1Table::build(
        perfs
            .iter()
            .map(|(game, agents)| (game.as_str(), agents.iter().map(|(a, p)| (a.clone(), *p)).collect())),
    )
}
