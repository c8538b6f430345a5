//! Forward-model planning under a hard budget of simulation calls.
//!
//! The crate is layered bottom-up:
//!
//! - [`engine`]: action sets, the [`engine::ForwardModel`] contract, budget
//!   metering and reproducible random streams.
//! - [`games`]: six small grid games (three deterministic, three stochastic)
//!   with five ASCII levels each.
//! - [`agents`]: rolling horizon evolution, random search, open-loop MCTS and a
//!   uniform random baseline.
//! - [`stats`]: Formula-1 style ranking points, sample summaries and the
//!   Mann-Whitney U test.
//! - [`harness`]: experiment configs, parameter sweeps, the budget study,
//!   significance matrices and result files.

pub mod agents;
pub mod engine;
pub mod games;
pub mod harness;
pub mod stats;
