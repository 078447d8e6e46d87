use std::collections::VecDeque;

use super::{order_min_degree, HeuristicId, OrderingHeuristic};
use crate::graph::{EliminationOrdering, InteractionGraph};

/// Components at or below this size are ordered by minimum degree.
const LEAF_SIZE: usize = 3;

/// Nested dissection with level-structure separators: split the graph with
/// a small vertex separator, order each remaining component recursively,
/// and eliminate the separator last.
pub struct NestedDissection;

impl OrderingHeuristic for NestedDissection {
    fn id(&self) -> HeuristicId {
        HeuristicId::Nd
    }

    fn order(&self, g: &InteractionGraph) -> EliminationOrdering {
        order_nested_dissection(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separator {
    /// Sorted separator vertices.
    pub separator: Vec<usize>,
    /// Connected components left after removing the separator, each sorted,
    /// ordered by smallest vertex.
    pub components: Vec<Vec<usize>>,
}

pub fn order_nested_dissection(g: &InteractionGraph) -> EliminationOrdering {
    let mut order = Vec::with_capacity(g.n());
    let all: Vec<usize> = (0..g.n()).collect();
    dissect(g, all, &mut order);
    EliminationOrdering::new(order, g.n()).expect("dissection covers every vertex once")
}

fn dissect(g: &InteractionGraph, vertices: Vec<usize>, order: &mut Vec<usize>) {
    let comps = components(g, &vertices);
    if comps.len() > 1 {
        for comp in comps {
            dissect(g, comp, order);
        }
        return;
    }
    if vertices.len() > LEAF_SIZE {
        if let Some(split) = find_separator(g, &vertices) {
            for comp in split.components {
                dissect(g, comp, order);
            }
            order.extend(split.separator);
            return;
        }
    }
    let local = order_min_degree(&g.induced_subgraph(&vertices));
    order.extend(local.as_slice().iter().map(|&i| vertices[i]));
}

fn membership(n: usize, vertices: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in vertices {
        mask[v] = true;
    }
    mask
}

/// Connected components of the subgraph induced by `vertices`.
fn components(g: &InteractionGraph, vertices: &[usize]) -> Vec<Vec<usize>> {
    let mut unseen = membership(g.n(), vertices);
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    let mut comps = Vec::new();
    for &start in &sorted {
        if !unseen[start] {
            continue;
        }
        unseen[start] = false;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if unseen[w] {
                    unseen[w] = false;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// BFS level structure rooted at `root`, restricted to `member` vertices.
fn level_structure(g: &InteractionGraph, member: &[bool], root: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    seen[root] = true;
    let mut levels = vec![vec![root]];
    loop {
        let mut next = Vec::new();
        for &v in levels.last().unwrap() {
            for &w in g.neighbors(v) {
                if member[w] && !seen[w] {
                    seen[w] = true;
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            return levels;
        }
        next.sort_unstable();
        levels.push(next);
    }
}

/// Finds a separator of the connected vertex set `vertices`.
///
/// The root of the level structure is pseudo-peripheral: start from the
/// smallest vertex, move to a farthest vertex, and once more from there.
/// The median level is the separator; separator vertices without neighbors
/// on one side are then moved to the other side. Returns `None` if the
/// level structure has fewer than three levels.
pub fn find_separator(g: &InteractionGraph, vertices: &[usize]) -> Option<Separator> {
    let member = membership(g.n(), vertices);
    let start = *vertices.iter().min()?;
    let mut root = start;
    for _ in 0..2 {
        root = level_structure(g, &member, root).last().unwrap()[0];
    }
    let levels = level_structure(g, &member, root);
    if levels.len() < 3 {
        return None;
    }
    let mid = levels.len() / 2;

    // 0 = side A (levels below mid), 1 = separator, 2 = side B
    let mut side = vec![u8::MAX; g.n()];
    for (i, level) in levels.iter().enumerate() {
        let s = match i.cmp(&mid) {
            std::cmp::Ordering::Less => 0,
            std::cmp::Ordering::Equal => 1,
            std::cmp::Ordering::Greater => 2,
        };
        for &v in level {
            side[v] = s;
        }
    }
    for &v in &levels[mid] {
        let touches = |s: u8| g.neighbors(v).iter().any(|&w| side[w] == s);
        if !touches(2) {
            side[v] = 0;
        } else if !touches(0) {
            side[v] = 2;
        }
    }

    let separator: Vec<usize> = levels[mid].iter().copied().filter(|&v| side[v] == 1).collect();
    if separator.is_empty() {
        return None;
    }
    let rest: Vec<usize> = vertices.iter().copied().filter(|&v| side[v] != 1).collect();
    Some(Separator {
        separator,
        components: components(g, &rest),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::induced_width;

    fn path(n: usize) -> InteractionGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        InteractionGraph::from_edges(n, &edges)
    }

    #[test]
    fn path_of_seven_eliminates_middle_last() {
        let ord = order_nested_dissection(&path(7));
        assert_eq!(*ord.as_slice().last().unwrap(), 3);
        let split = find_separator(&path(7), &(0..7).collect::<Vec<_>>()).unwrap();
        assert_eq!(split.separator, vec![3]);
        assert_eq!(split.components, vec![vec![0, 1, 2], vec![4, 5, 6]]);
    }

    #[test]
    fn two_triangles_are_ordered_in_blocks() {
        let g = InteractionGraph::from_edges(6, &[(0, 2), (2, 4), (0, 4), (1, 3), (3, 5), (1, 5)]);
        let ord = order_nested_dissection(&g);
        let first: Vec<usize> = ord.as_slice()[..3].to_vec();
        assert!(first.iter().all(|v| [0, 2, 4].contains(v)));
        assert_eq!(induced_width(&g, &ord).unwrap(), 2);
    }

    #[test]
    fn clique_is_any_permutation() {
        let k4 = InteractionGraph::complete(4);
        let ord = order_nested_dissection(&k4);
        assert_eq!(ord.len(), 4);
        assert_eq!(induced_width(&k4, &ord).unwrap(), 3);
    }

    #[test]
    fn grid_separator_disconnects() {
        let (rows, cols) = (4, 5);
        let mut g = InteractionGraph::new(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    g.add_edge(v, v + 1);
                }
                if r + 1 < rows {
                    g.add_edge(v, v + cols);
                }
            }
        }
        let all: Vec<usize> = (0..g.n()).collect();
        let split = find_separator(&g, &all).unwrap();
        assert!(split.components.len() >= 2);
        for (i, a) in split.components.iter().enumerate() {
            for b in &split.components[i + 1..] {
                assert!(a.iter().all(|&u| b.iter().all(|&v| !g.has_edge(u, v))));
            }
        }
        let covered: usize = split.separator.len() + split.components.iter().map(Vec::len).sum::<usize>();
        assert_eq!(covered, g.n());
    }
}
