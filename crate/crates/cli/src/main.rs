use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use horizon::agents::AgentSpec;
use horizon::games::{GameKind, Nature};
use horizon::harness::{
    f1_table, new_results_dir, read_results, render_budget, render_f1, render_grid, render_significance,
    run_budget_study, run_game, run_sweep, significance_matrix, write_results, BudgetStudy, Contender,
    ExperimentConfig, RunRecord, RunSpec, Subset, SweepGrid, SweepResult, DEFAULT_BUDGETS,
};
use horizon::stats::ALPHA;

const RECORDS_FILE: &str = "records.csv";

#[derive(Parser, Debug)]
#[command(name = "horizon", version, about = "Rolling horizon evolution experiments on small grid games")]
struct Cli {
    /// Worker threads for experiment runs.
    #[arg(long, global = true, env = "HORIZON_PARALLEL")]
    parallel: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Play one episode and print its record as JSON.
    Play {
        #[arg(long)]
        game: String,
        #[arg(long, default_value_t = 0)]
        level: usize,
        /// Agent spec: random, rs, rhea:P=..,L=.., olmcts[:depth=..,c=..]
        #[arg(long)]
        agent: AgentSpec,
        #[arg(long, default_value_t = 480)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print one JSON decision trace per tick to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Run the population size by individual length grid.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Two repeats on levels 0 and 1.
        #[arg(long)]
        smoke: bool,
        /// Output directory; defaults to results/<name>/<timestamp>.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare random search, evolution at larger budgets, and OLMCTS.
    BudgetStudy {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        smoke: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Formula-1 standings of the agents in a results directory.
    Rank {
        #[arg(long)]
        results: PathBuf,
    },
    /// Render a table from a results directory.
    Render {
        #[arg(long)]
        results: PathBuf,
        #[arg(long, value_enum)]
        table: Table,
    },
    /// List the bundled games.
    ListGames,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Table {
    Grid,
    Budget,
    Significance,
    F1,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let parallel = cli.parallel;
    match cli.command {
        Command::Play { game, level, agent, budget, seed, trace } => play(&game, level, agent, budget, seed, trace),
        Command::Sweep { config, smoke, out } => {
            let cfg = load_config(&config, smoke, parallel)?;
            let grid = cfg.sweep.clone().unwrap_or_default();
            sweep(&cfg, &grid, out)
        }
        Command::BudgetStudy { config, smoke, out } => {
            let cfg = load_config(&config, smoke, parallel)?;
            budget_study(&cfg, out)
        }
        Command::Rank { results } => {
            print!("{}", render_f1(&f1_table(&load_records(&results)?)));
            Ok(())
        }
        Command::Render { results, table } => {
            print!("{}", render_table(&load_records(&results)?, table)?);
            Ok(())
        }
        Command::ListGames => {
            for kind in GameKind::ALL {
                let tag = match kind.nature() {
                    Nature::Deterministic => "D",
                    Nature::Stochastic => "S",
                };
                println!("{}\t{tag}", kind.id());
            }
            Ok(())
        }
    }
}

fn load_config(path: &Path, smoke: bool, parallel: Option<usize>) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::load(path).with_context(|| format!("loading {}", path.display()))?;
    if smoke {
        cfg = cfg.smoke();
    }
    if let Some(p) = parallel {
        cfg.parallelism = p.max(1);
    }
    Ok(cfg)
}

fn output_dir(out: Option<PathBuf>, name: &str) -> Result<PathBuf> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            Ok(dir)
        }
        None => Ok(new_results_dir(Path::new("results"), name)?),
    }
}

/// Record JSON without the wall-clock field, so repeated runs print the same bytes.
fn record_json(record: &RunRecord) -> Result<String> {
    let mut value = serde_json::to_value(record)?;
    if let Some(map) = value.as_object_mut() {
        map.remove("wall_time_ms");
    }
    Ok(serde_json::to_string(&value)?)
}

fn play(game: &str, level: usize, agent: AgentSpec, budget: u64, seed: u64, trace: bool) -> Result<()> {
    let game = GameKind::from_id(game)?;
    let contender = Contender::new(agent, budget);
    let spec = RunSpec {
        seed: RunSpec::derive_seed(seed, &contender.label, game, level, 0),
        contender,
        game,
        level,
        repeat: 0,
    };
    let outcome = run_game(&spec, |t| {
        if trace {
            if let Ok(line) = serde_json::to_string(t) {
                eprintln!("{line}");
            }
        }
    })?;
    log::info!("wall time {} ms", outcome.record.wall_time_ms);
    println!("{}", record_json(&outcome.record)?);
    Ok(())
}

fn write_text(dir: &Path, name: &str, text: &str) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
}

fn sweep(cfg: &ExperimentConfig, grid: &SweepGrid, out: Option<PathBuf>) -> Result<()> {
    let dir = output_dir(out, &cfg.name)?;
    let (result, records) = run_sweep(cfg, &grid.populations, &grid.lengths)?;
    if !result.audit.is_clean() {
        bail!("budget audit failed: {:?}", result.audit);
    }
    write_results(&dir.join(RECORDS_FILE), &records, Some(cfg))?;
    write_text(&dir, "sweep.json", &serde_json::to_string_pretty(&result)?)?;
    let mut text = String::new();
    for subset in Subset::EACH {
        text.push_str(&render_grid(&result, subset));
        text.push('\n');
    }
    write_text(&dir, "grid.txt", &text)?;
    print!("{text}");
    eprintln!("results written to {}", dir.display());
    Ok(())
}

fn budget_study(cfg: &ExperimentConfig, out: Option<PathBuf>) -> Result<()> {
    let dir = output_dir(out, &cfg.name)?;
    let budgets = cfg.budgets.clone().unwrap_or_else(|| DEFAULT_BUDGETS.to_vec());
    let (study, records) = run_budget_study(cfg, &budgets)?;
    if !study.audit.is_clean() {
        bail!("budget audit failed: {:?}", study.audit);
    }
    write_results(&dir.join(RECORDS_FILE), &records, Some(cfg))?;
    write_text(&dir, "budget.json", &serde_json::to_string_pretty(&study)?)?;
    let text = render_budget(&study);
    write_text(&dir, "budget.txt", &text)?;
    print!("{text}");
    eprintln!("results written to {}", dir.display());
    Ok(())
}

/// Reads `records.csv` from a results directory, or the file itself.
fn load_records(path: &Path) -> Result<Vec<RunRecord>> {
    let file = if path.is_dir() { path.join(RECORDS_FILE) } else { path.to_path_buf() };
    Ok(read_results(&file).with_context(|| format!("reading {}", file.display()))?.records)
}

fn render_table(records: &[RunRecord], table: Table) -> Result<String> {
    Ok(match table {
        Table::Grid => {
            let result = SweepResult::from_records(records);
            if result.cells.is_empty() {
                bail!("no rhea:P=..,L=.. records to grid");
            }
            Subset::EACH
                .iter()
                .map(|&s| render_grid(&result, s))
                .collect::<Vec<_>>()
                .join("\n")
        }
        Table::Budget => render_budget(&BudgetStudy::from_records(records)),
        Table::Significance => render_significance(&significance_matrix(records, ALPHA)),
        Table::F1 => render_f1(&f1_table(records)),
    })
}
