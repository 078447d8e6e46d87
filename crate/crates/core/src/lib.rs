//! Nonserial dynamic programming (variable elimination) for sparse discrete
//! optimization problems.
//!
//! A [`DopInstance`] is turned into an [`InteractionGraph`]; an ordering
//! heuristic from the [`HeuristicRegistry`] picks an elimination order; the
//! [`solver`] eliminates variables along it and recovers an optimal
//! assignment. The [`bench`] module compares heuristics on generated or
//! loaded instances.

pub mod bench;
pub mod error;
pub mod format;
pub mod generator;
pub mod graph;
pub mod model;
pub mod orderings;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{EliminationOrdering, EliminationTrace, InteractionGraph};
pub use model::{Assignment, DopInstance, LinearConstraint, ObjectiveComponent, Relation, Score};
pub use orderings::{HeuristicId, HeuristicRegistry, OrderingHeuristic};
pub use solver::{brute_force_solve, solve, SolveResult, SolveStatus, SolverConfig};
