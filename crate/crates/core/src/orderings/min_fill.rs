use super::{greedy_order, HeuristicId, OrderingHeuristic};
use crate::graph::{EliminationOrdering, InteractionGraph};

/// Minimum fill-in: eliminate the vertex whose neighborhood needs the fewest
/// added edges to become a clique.
pub struct MinimumFill;

impl OrderingHeuristic for MinimumFill {
    fn id(&self) -> HeuristicId {
        HeuristicId::MinFill
    }

    fn order(&self, g: &InteractionGraph) -> EliminationOrdering {
        order_min_fill(g)
    }
}

pub fn order_min_fill(g: &InteractionGraph) -> EliminationOrdering {
    let order = greedy_order(g, |work, v| work.fill_count(v));
    EliminationOrdering::new(order, g.n()).expect("greedy elimination yields a permutation")
}
