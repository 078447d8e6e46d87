//! Elimination-ordering heuristics.
//!
//! Each heuristic implements [`OrderingHeuristic`] and is looked up by its
//! CLI token through a [`HeuristicRegistry`]. All tie-breaks go to the
//! smallest vertex index, so every heuristic is a deterministic function of
//! its input graph.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{EliminationGraph, EliminationOrdering, InteractionGraph};

mod lex_bfs;
mod mcs;
mod min_degree;
mod min_fill;
mod nested_dissection;

pub use lex_bfs::{lex_bfs_numbering, order_lex_bfs, LexBfs};
pub use mcs::{mcs_visit_order, order_mcs, MaximumCardinalitySearch};
pub use min_degree::{order_min_degree, MinimumDegree};
pub use min_fill::{order_min_fill, MinimumFill};
pub use nested_dissection::{find_separator, order_nested_dissection, NestedDissection, Separator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HeuristicId {
    Md,
    Nd,
    Mcs,
    MinFill,
    LexBfs,
}

impl HeuristicId {
    pub const ALL: [HeuristicId; 5] = [
        HeuristicId::Md,
        HeuristicId::Nd,
        HeuristicId::Mcs,
        HeuristicId::MinFill,
        HeuristicId::LexBfs,
    ];

    pub fn token(self) -> &'static str {
        match self {
            HeuristicId::Md => "md",
            HeuristicId::Nd => "nd",
            HeuristicId::Mcs => "mcs",
            HeuristicId::MinFill => "minfill",
            HeuristicId::LexBfs => "lexbfs",
        }
    }

    /// Display label used in report column headers.
    pub fn label(self) -> &'static str {
        match self {
            HeuristicId::Md => "MD",
            HeuristicId::Nd => "ND",
            HeuristicId::Mcs => "MCS",
            HeuristicId::MinFill => "MIN-FILL",
            HeuristicId::LexBfs => "LEX-BFS",
        }
    }
}

impl fmt::Display for HeuristicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for HeuristicId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HeuristicId::ALL
            .into_iter()
            .find(|h| h.token() == s)
            .ok_or_else(|| Error::UnknownHeuristic(s.to_string()))
    }
}

pub trait OrderingHeuristic: Send + Sync {
    fn id(&self) -> HeuristicId;

    /// A permutation of `0..g.n()`.
    fn order(&self, g: &InteractionGraph) -> EliminationOrdering;

    fn token(&self) -> &'static str {
        self.id().token()
    }
}

/// Heuristics addressable by token, iterated in registration order.
pub struct HeuristicRegistry {
    entries: Vec<Box<dyn OrderingHeuristic>>,
}

impl HeuristicRegistry {
    pub fn empty() -> Self {
        HeuristicRegistry { entries: Vec::new() }
    }

    /// The five built-in heuristics in `HeuristicId::ALL` order.
    pub fn with_defaults() -> Self {
        let mut reg = HeuristicRegistry::empty();
        reg.register(Box::new(MinimumDegree));
        reg.register(Box::new(NestedDissection));
        reg.register(Box::new(MaximumCardinalitySearch));
        reg.register(Box::new(MinimumFill));
        reg.register(Box::new(LexBfs));
        reg
    }

    /// Adds a heuristic, replacing any existing entry with the same token.
    pub fn register(&mut self, heuristic: Box<dyn OrderingHeuristic>) {
        match self.entries.iter().position(|h| h.token() == heuristic.token()) {
            Some(i) => self.entries[i] = heuristic,
            None => self.entries.push(heuristic),
        }
    }

    pub fn get(&self, token: &str) -> Option<&dyn OrderingHeuristic> {
        self.entries.iter().find(|h| h.token() == token).map(|h| h.as_ref())
    }

    pub fn by_id(&self, id: HeuristicId) -> Option<&dyn OrderingHeuristic> {
        self.get(id.token())
    }

    pub fn tokens(&self) -> Vec<&'static str> {
        self.entries.iter().map(|h| h.token()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn OrderingHeuristic> {
        self.entries.iter().map(|h| h.as_ref())
    }

    /// Resolves `all` or a comma-separated token list.
    pub fn select(&self, selection: &str) -> Result<Vec<&dyn OrderingHeuristic>> {
        if selection == "all" {
            return Ok(self.iter().collect());
        }
        selection
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| self.get(t).ok_or_else(|| Error::UnknownHeuristic(t.to_string())))
            .collect()
    }
}

impl Default for HeuristicRegistry {
    fn default() -> Self {
        HeuristicRegistry::with_defaults()
    }
}

/// Orders `g` with the built-in heuristic `id`.
pub fn order_with(id: HeuristicId, g: &InteractionGraph) -> EliminationOrdering {
    match id {
        HeuristicId::Md => order_min_degree(g),
        HeuristicId::Nd => order_nested_dissection(g),
        HeuristicId::Mcs => order_mcs(g),
        HeuristicId::MinFill => order_min_fill(g),
        HeuristicId::LexBfs => order_lex_bfs(g),
    }
}

/// True iff eliminating along `ord` adds no fill edge.
pub fn is_perfect_elimination_ordering(g: &InteractionGraph, ord: &EliminationOrdering) -> Result<bool> {
    if ord.len() != g.n() {
        return Err(Error::InvalidOrdering {
            n: g.n(),
            reason: format!("length {} differs from vertex count", ord.len()),
        });
    }
    let mut work = EliminationGraph::new(g);
    for &v in ord.as_slice() {
        if !work.eliminate(v)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Greedy elimination: repeatedly eliminate the live vertex with the smallest
/// `cost`, ties to the smallest index.
pub(crate) fn greedy_order(g: &InteractionGraph, cost: impl Fn(&EliminationGraph, usize) -> usize) -> Vec<usize> {
    let mut work = EliminationGraph::new(g);
    let mut order = Vec::with_capacity(g.n());
    while work.remaining() > 0 {
        let v = work
            .alive_vertices()
            .min_by_key(|&v| (cost(&work, v), v))
            .expect("a live vertex remains");
        work.eliminate(v).expect("vertex is alive");
        order.push(v);
    }
    order
}
