mod common;

use common::{random_graph, random_k_tree};
use nsdp_core::graph::{run_elimination_game, EliminationGraph};
use nsdp_core::orderings::{
    find_separator, is_perfect_elimination_ordering, mcs_visit_order, order_min_degree, order_min_fill,
    order_nested_dissection,
};
use nsdp_core::{EliminationOrdering, HeuristicRegistry, InteractionGraph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = InteractionGraph> {
    (0..=max_n, 0.0..1.0f64, any::<u64>())
        .prop_map(|(n, p, seed)| random_graph(&mut ChaCha8Rng::seed_from_u64(seed), n, p))
}

fn check_greedy_minimality(
    g: &InteractionGraph,
    ord: &EliminationOrdering,
    cost: impl Fn(&EliminationGraph, usize) -> usize,
) {
    let mut work = EliminationGraph::new(g);
    for &v in ord.as_slice() {
        let chosen = cost(&work, v);
        for u in work.alive_vertices() {
            let c = cost(&work, u);
            assert!(
                chosen < c || (chosen == c && v <= u),
                "vertex {v} (cost {chosen}) beaten by {u} (cost {c})"
            );
        }
        work.eliminate(v).unwrap();
    }
}

fn check_mcs_visit(g: &InteractionGraph, visit: &[usize]) {
    let n = g.n();
    let mut visited = vec![false; n];
    for &v in visit {
        let count = |u: usize| g.neighbors(u).iter().filter(|&&w| visited[w]).count();
        let chosen = count(v);
        for u in (0..n).filter(|&u| !visited[u]) {
            assert!(count(u) <= chosen);
        }
        visited[v] = true;
    }
}

proptest! {
    #[test]
    fn every_heuristic_returns_a_deterministic_permutation(g in graph_strategy(14)) {
        let reg = HeuristicRegistry::with_defaults();
        for h in reg.iter() {
            let ord = h.order(&g);
            prop_assert!(EliminationOrdering::new(ord.as_slice().to_vec(), g.n()).is_ok());
            prop_assert_eq!(ord, h.order(&g.clone()));
        }
    }

    #[test]
    fn greedy_heuristics_are_stepwise_minimal(g in graph_strategy(14)) {
        check_greedy_minimality(&g, &order_min_degree(&g), |w, v| w.degree(v));
        check_greedy_minimality(&g, &order_min_fill(&g), |w, v| w.fill_count(v));
        check_mcs_visit(&g, &mcs_visit_order(&g));
    }

    #[test]
    fn top_level_separator_splits_the_graph(g in graph_strategy(20)) {
        let all: Vec<usize> = (0..g.n()).collect();
        if let Some(split) = find_separator(&g, &all) {
            prop_assert!(!split.separator.is_empty());
            prop_assert!(split.components.len() >= 2);
            let mut which = vec![usize::MAX; g.n()];
            for (i, comp) in split.components.iter().enumerate() {
                for &v in comp {
                    which[v] = i;
                }
            }
            for (u, v) in g.edges() {
                if which[u] != usize::MAX && which[v] != usize::MAX {
                    prop_assert_eq!(which[u], which[v]);
                }
            }
            let covered = split.separator.len() + split.components.iter().map(Vec::len).sum::<usize>();
            prop_assert_eq!(covered, g.n());
        }
    }
}

#[test]
fn nested_dissection_puts_the_top_separator_last() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let n = rng.gen_range(5..25);
        let g = random_graph(&mut rng, n, 0.2);
        let all: Vec<usize> = (0..n).collect();
        let connected = {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(u) = stack.pop() {
                for &w in g.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen.iter().all(|&s| s)
        };
        if !connected {
            continue;
        }
        if let Some(split) = find_separator(&g, &all) {
            let ord = order_nested_dissection(&g);
            let mut tail = ord.as_slice()[n - split.separator.len()..].to_vec();
            tail.sort_unstable();
            assert_eq!(tail, split.separator);
        }
    }
}

#[test]
fn chordal_family_guarantees() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let reg = HeuristicRegistry::with_defaults();
    for k in 1..=3 {
        for _ in 0..10 {
            let n = rng.gen_range(k + 1..=10);
            let g = random_k_tree(&mut rng, n, k);
            for token in ["mcs", "lexbfs"] {
                let ord = reg.get(token).unwrap().order(&g);
                assert!(is_perfect_elimination_ordering(&g, &ord).unwrap(), "{token} on {g:?}");
            }
            let fill = run_elimination_game(&g, &order_min_fill(&g)).unwrap().total_fill;
            assert_eq!(fill, 0);
        }
    }
}
