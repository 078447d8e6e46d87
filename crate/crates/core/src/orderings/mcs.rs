use super::{HeuristicId, OrderingHeuristic};
use crate::graph::{EliminationOrdering, InteractionGraph};

/// Maximum cardinality search. The elimination order is the reverse of the
/// visit order, which makes it a perfect elimination ordering on chordal
/// graphs.
pub struct MaximumCardinalitySearch;

impl OrderingHeuristic for MaximumCardinalitySearch {
    fn id(&self) -> HeuristicId {
        HeuristicId::Mcs
    }

    fn order(&self, g: &InteractionGraph) -> EliminationOrdering {
        order_mcs(g)
    }
}

/// Visits vertices so that each one has the most already-visited neighbors
/// among the unvisited vertices; ties go to the smallest index, so the first
/// visited vertex is 0.
pub fn mcs_visit_order(g: &InteractionGraph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("an unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !visited[w] {
                weight[w] += 1;
            }
        }
    }
    order
}

pub fn order_mcs(g: &InteractionGraph) -> EliminationOrdering {
    let mut order = mcs_visit_order(g);
    order.reverse();
    EliminationOrdering::new(order, g.n()).expect("visit order is a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orderings::is_perfect_elimination_ordering;

    #[test]
    fn path_of_three() {
        let p3 = InteractionGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(mcs_visit_order(&p3), vec![0, 1, 2]);
        assert_eq!(order_mcs(&p3).as_slice(), &[2, 1, 0]);
    }

    #[test]
    fn clique_visit_has_max_cardinality_property() {
        let k5 = InteractionGraph::complete(5);
        let visit = mcs_visit_order(&k5);
        for (i, &v) in visit.iter().enumerate() {
            let count = |u: usize| visit[..i].iter().filter(|&&w| k5.has_edge(u, w)).count();
            assert!(visit[i..].iter().all(|&u| count(u) <= count(v)));
        }
    }

    #[test]
    fn triangle_with_pendant_gives_peo() {
        let g = InteractionGraph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]);
        let ord = order_mcs(&g);
        assert_eq!(ord.as_slice(), &[3, 2, 1, 0]);
        assert!(is_perfect_elimination_ordering(&g, &ord).unwrap());
    }
}
