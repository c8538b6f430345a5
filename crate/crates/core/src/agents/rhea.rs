//! Vanilla rolling horizon evolution.
//!
//! The evolutionary scheme depends on the population size:
//!
//! - `P == 1`: random mutation hill climber. The mutated copy replaces the
//!   incumbent only when strictly fitter.
//! - `P == 2`: the best individual survives; the other slot is a mutated
//!   uniform crossover of the two.
//! - `P >= 3`: the best survives; every other slot is a mutated crossover of
//!   two size-2 tournament winners.
//!
//! Initialization is paid from the same budget. The decision is allowed
//! `ceil(B / L)` evaluations, the number a budget of `B` calls pays for when
//! every evaluation runs its full length; evaluations cut short by a terminal
//! state use fewer calls, but never buy extra evaluations. With `P * L >= B`
//! the initial population therefore exhausts the allowance, and the
//! configuration is exactly random search.

use crate::engine::{advance, copy_state, BudgetMeter, EngineError, ForwardModel, RngStream};

use super::{no_evaluation, value_heuristic, AgentError, Decision, DecisionTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RheaConfig {
    pub population_size: usize,
    pub individual_length: usize,
    /// Advance calls per decision.
    pub budget: u64,
}

impl RheaConfig {
    pub fn new(population_size: usize, individual_length: usize, budget: u64) -> Self {
        assert!(population_size >= 1 && individual_length >= 1);
        Self {
            population_size,
            individual_length,
            budget,
        }
    }

    /// Random search: 24 random walks of length 20.
    pub fn random_search(budget: u64) -> Self {
        Self::new(24, 20, budget)
    }

    pub fn elitism(&self) -> usize {
        if self.population_size >= 2 {
            1
        } else {
            0
        }
    }

    pub fn tournament_size(&self) -> usize {
        if self.population_size >= 3 {
            2
        } else {
            0
        }
    }

    /// Evaluations one decision may perform.
    pub fn evaluation_allowance(&self) -> u64 {
        self.budget.div_ceil(self.individual_length as u64)
    }

    /// True when the initial population alone costs more than the budget.
    pub fn overcommitted(&self) -> bool {
        (self.population_size * self.individual_length) as u64 > self.budget
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    pub genes: Vec<usize>,
    pub fitness: Option<f64>,
    /// Genes actually advanced during the last evaluation.
    pub genes_consumed: usize,
}

impl Individual {
    pub fn new(genes: Vec<usize>) -> Self {
        Self {
            genes,
            fitness: None,
            genes_consumed: 0,
        }
    }

    pub fn first_action(&self) -> usize {
        self.genes[0]
    }

    fn fitness_or_min(&self) -> f64 {
        self.fitness.unwrap_or(f64::NEG_INFINITY)
    }
}

/// `P` individuals of `L` genes, drawn uniformly from `0..n` in row-major order.
pub fn init_population(cfg: &RheaConfig, n: usize, rng: &mut RngStream) -> Vec<Individual> {
    (0..cfg.population_size)
        .map(|_| Individual::new((0..cfg.individual_length).map(|_| rng.below(n)).collect()))
        .collect()
}

/// Simulates `ind`'s genes from a copy of `root` until a terminal state, the
/// last gene, or the end of the budget, and scores the state reached.
pub fn evaluate<S: ForwardModel>(
    ind: &mut Individual,
    root: &S,
    meter: &mut BudgetMeter,
    agent_rng: &mut RngStream,
) -> Result<f64, AgentError> {
    if meter.is_exhausted() {
        return Err(AgentError::ZeroBudget);
    }
    let mut state = copy_state(root, agent_rng);
    let mut consumed = 0;
    for &gene in &ind.genes {
        if state.status().is_terminal() {
            break;
        }
        match advance(&mut state, gene, meter) {
            Ok(()) => consumed += 1,
            Err(EngineError::BudgetExhausted { .. }) => break,
            Err(e) => return Err(e.into()),
        }
    }
    let fitness = value_heuristic(&state);
    ind.fitness = Some(fitness);
    ind.genes_consumed = consumed;
    Ok(fitness)
}

/// Result of [`mutate`]; `degenerate` is set when only one action exists and
/// no gene could change.
#[derive(Clone, Debug, PartialEq)]
pub struct Mutation {
    pub child: Individual,
    pub degenerate: bool,
}

/// Redraws one uniformly chosen gene to a different value.
pub fn mutate(ind: &Individual, n: usize, rng: &mut RngStream) -> Mutation {
    let mut genes = ind.genes.clone();
    if n <= 1 {
        return Mutation {
            child: Individual::new(genes),
            degenerate: true,
        };
    }
    let pos = rng.below(genes.len());
    let mut value = rng.below(n - 1);
    if value >= genes[pos] {
        value += 1;
    }
    genes[pos] = value;
    Mutation {
        child: Individual::new(genes),
        degenerate: false,
    }
}

/// Each gene taken from `a` or `b` with probability 1/2.
pub fn uniform_crossover(a: &Individual, b: &Individual, rng: &mut RngStream) -> Individual {
    assert_eq!(a.genes.len(), b.genes.len(), "parents differ in length");
    let genes = a
        .genes
        .iter()
        .zip(&b.genes)
        .map(|(&x, &y)| if rng.below(2) == 0 { x } else { y })
        .collect();
    Individual::new(genes)
}

/// Size-2 tournament: two distinct members drawn uniformly, the fitter wins,
/// ties go to the lower index. Returns the winner's index.
pub fn tournament_select(pop: &[Individual], rng: &mut RngStream) -> usize {
    assert!(pop.len() >= 2, "tournament needs two contestants");
    let i = rng.below(pop.len());
    let mut j = rng.below(pop.len() - 1);
    if j >= i {
        j += 1;
    }
    let (lo, hi) = (i.min(j), i.max(j));
    if pop[hi].fitness_or_min() > pop[lo].fitness_or_min() {
        hi
    } else {
        lo
    }
}

/// Bookkeeping shared by the evolutionary loop.
struct Search<'a, S> {
    root: &'a S,
    meter: BudgetMeter,
    allowance: u64,
    length: usize,
    trace: DecisionTrace,
    best: Option<(f64, usize)>,
}

impl<S: ForwardModel> Search<'_, S> {
    fn can_evaluate(&self) -> bool {
        !self.meter.is_exhausted() && (self.trace.evaluations as u64) < self.allowance
    }

    /// Evaluates if budget and allowance permit; returns whether it did.
    fn evaluate(&mut self, ind: &mut Individual, rng: &mut RngStream) -> bool {
        if !self.can_evaluate() {
            return false;
        }
        let Ok(fitness) = evaluate(ind, self.root, &mut self.meter, rng) else {
            return false;
        };
        self.trace.evaluations += 1;
        if ind.genes_consumed < self.length && !self.meter.is_exhausted() {
            self.trace.terminal_cutoffs += 1;
        }
        if self.best.is_none_or(|(f, _)| fitness > f) {
            self.best = Some((fitness, ind.first_action()));
        }
        true
    }

    fn mutate(&mut self, ind: &Individual, n: usize, rng: &mut RngStream) -> Individual {
        let m = mutate(ind, n, rng);
        self.trace.mutations += 1;
        if m.degenerate {
            self.trace.degenerate_mutations += 1;
        }
        m.child
    }

    fn crossover(&mut self, a: &Individual, b: &Individual, rng: &mut RngStream) -> Individual {
        self.trace.crossovers += 1;
        uniform_crossover(a, b, rng)
    }
}

fn best_fitness(pop: &[Individual]) -> f64 {
    pop.iter().map(Individual::fitness_or_min).fold(f64::NEG_INFINITY, f64::max)
}

/// One RHEA decision from `root`. Returns the first gene of the best
/// individual evaluated during the decision (ties: the earliest found).
pub fn rhea_decide<S: ForwardModel>(
    root: &S,
    cfg: &RheaConfig,
    rng: &mut RngStream,
) -> Result<Decision, AgentError> {
    if root.status().is_terminal() {
        return Err(AgentError::TerminalRoot);
    }
    let n = root.action_set().len();
    let mut search = Search {
        root,
        meter: BudgetMeter::new(cfg.budget),
        allowance: cfg.evaluation_allowance(),
        length: cfg.individual_length,
        trace: DecisionTrace {
            budget: cfg.budget,
            horizon: Some(cfg.individual_length),
            ..DecisionTrace::default()
        },
        best: None,
    };

    let mut pop = init_population(cfg, n, rng);
    let mut evaluated = 0;
    for ind in pop.iter_mut() {
        if !search.evaluate(ind, rng) {
            break;
        }
        evaluated += 1;
    }
    pop.truncate(evaluated);
    search.trace.peak_individuals = pop.len();
    if pop.is_empty() {
        return Ok(no_evaluation(root.action_set().nil_index(), cfg.budget, cfg.individual_length));
    }
    if evaluated == cfg.population_size {
        search.trace.population_evaluations = 1;
    }
    search.trace.best_per_generation.push(best_fitness(&pop));

    while evaluated == cfg.population_size && search.can_evaluate() {
        let complete = match cfg.population_size {
            1 => {
                let mut child = search.mutate(&pop[0], n, rng);
                search.trace.peak_individuals = 2;
                let done = search.evaluate(&mut child, rng);
                if done && child.fitness_or_min() > pop[0].fitness_or_min() {
                    pop[0] = child;
                }
                done
            }
            size => {
                // Best first; the stable sort keeps earlier members ahead on ties.
                pop.sort_by(|a, b| b.fitness_or_min().total_cmp(&a.fitness_or_min()));
                let mut next = Vec::with_capacity(size);
                next.push(pop[0].clone());
                let mut done = true;
                for slot in 1..size {
                    if !search.can_evaluate() {
                        done = false;
                        next.push(pop[slot].clone());
                        continue;
                    }
                    let (a, b) = if size == 2 {
                        (0, 1)
                    } else {
                        (tournament_select(&pop, rng), tournament_select(&pop, rng))
                    };
                    let cross = search.crossover(&pop[a], &pop[b], rng);
                    let mut child = search.mutate(&cross, n, rng);
                    if search.evaluate(&mut child, rng) {
                        next.push(child);
                    } else {
                        done = false;
                        next.push(pop[slot].clone());
                    }
                }
                search.trace.peak_individuals = search.trace.peak_individuals.max(pop.len() + next.len());
                pop = next;
                done
            }
        };
        if complete {
            search.trace.generations_completed += 1;
            search.trace.population_evaluations += 1;
        }
        search.trace.best_per_generation.push(best_fitness(&pop));
    }

    let (fitness, action) = search.best.expect("at least one evaluation");
    search.trace.advance_calls_used = search.meter.used();
    search.trace.best_fitness = Some(fitness);
    search.trace.chosen_action = action;
    Ok(Decision {
        action,
        trace: search.trace,
    })
}

/// Random search preset: [`rhea_decide`] with 24 individuals of length 20.
pub fn rs_decide<S: ForwardModel>(root: &S, budget: u64, rng: &mut RngStream) -> Result<Decision, AgentError> {
    rhea_decide(root, &RheaConfig::random_search(budget), rng)
}
