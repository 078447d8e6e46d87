use super::{HeuristicId, OrderingHeuristic};
use crate::graph::{EliminationOrdering, InteractionGraph};

/// Lexicographic breadth-first search.
pub struct LexBfs;

impl OrderingHeuristic for LexBfs {
    fn id(&self) -> HeuristicId {
        HeuristicId::LexBfs
    }

    fn order(&self, g: &InteractionGraph) -> EliminationOrdering {
        order_lex_bfs(g)
    }
}

/// Numbers vertices from `n` down to 1. Each step numbers the unnumbered
/// vertex with the lexicographically largest label (ties to the smallest
/// index), then appends its number to the labels of its unnumbered
/// neighbors. Labels stay in decreasing order because numbers are handed
/// out in decreasing order. Returns `number[v]` for every vertex.
pub fn lex_bfs_numbering(g: &InteractionGraph) -> Vec<usize> {
    let n = g.n();
    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut number = vec![0usize; n];
    for i in (1..=n).rev() {
        let v = (0..n)
            .filter(|&v| number[v] == 0)
            .max_by(|&a, &b| labels[a].cmp(&labels[b]).then(b.cmp(&a)))
            .expect("an unnumbered vertex remains");
        number[v] = i;
        for &w in g.neighbors(v) {
            if number[w] == 0 {
                labels[w].push(i);
            }
        }
    }
    number
}

/// Eliminates the vertex numbered 1 first and the vertex numbered `n` last.
pub fn order_lex_bfs(g: &InteractionGraph) -> EliminationOrdering {
    let number = lex_bfs_numbering(g);
    let mut order = vec![0usize; g.n()];
    for (v, &k) in number.iter().enumerate() {
        order[k - 1] = v;
    }
    EliminationOrdering::new(order, g.n()).expect("numbering is a bijection")
}
