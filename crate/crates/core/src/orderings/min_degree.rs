use super::{greedy_order, HeuristicId, OrderingHeuristic};
use crate::graph::{EliminationOrdering, InteractionGraph};

/// Minimum degree: eliminate a vertex of least degree in the current
/// elimination graph. Degrees are rescanned at every step.
pub struct MinimumDegree;

impl OrderingHeuristic for MinimumDegree {
    fn id(&self) -> HeuristicId {
        HeuristicId::Md
    }

    fn order(&self, g: &InteractionGraph) -> EliminationOrdering {
        order_min_degree(g)
    }
}

pub fn order_min_degree(g: &InteractionGraph) -> EliminationOrdering {
    let order = greedy_order(g, |work, v| work.degree(v));
    EliminationOrdering::new(order, g.n()).expect("greedy elimination yields a permutation")
}
