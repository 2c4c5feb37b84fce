//! Boolean hedonic games: coalition formation with propositional goals.
//!
//! Each of `n` players states a goal formula over pair atoms `p(i,j)`
//! ("i and j are in the same coalition") and is satisfied by exactly the
//! partitions that model it. The crate provides:
//!
//! * [`partitions`] — coalition structures, their deviations (restrict,
//!   move, swap) and exhaustive enumeration;
//! * [`logic`] — the goal language: parsing, printing, evaluation,
//!   simultaneous substitution and the transitivity axiom whose models are
//!   exactly the partitions;
//! * [`deviation`] — substitutions that answer "would my goal hold after
//!   this deviation?" without building the deviated partition;
//! * [`game`] — games, dichotomous preferences and welfare;
//! * [`concepts`] — stability concepts (individual rationality, perfect,
//!   Nash, core, strict core, envy-freeness, Pareto and welfare optimality),
//!   each as a direct checker and, where one exists, as a single formula
//!   whose models are the stable partitions;
//! * [`solve`] — a self-contained SAT back end: Tseitin compilation, a DPLL
//!   solver, model enumeration, welfare maximisation, and DIMACS export.

pub mod concepts;
pub mod deviation;
mod error;
pub mod game;
pub mod logic;
pub mod partitions;
pub mod solve;
#[cfg(test)]
pub(crate) mod testgames;

pub use error::{Error, Result};
