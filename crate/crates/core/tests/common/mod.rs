#![allow(dead_code)]

use nsdp_core::model::ComponentKind;
use nsdp_core::{DopInstance, InteractionGraph, LinearConstraint, ObjectiveComponent, Relation, Score};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> InteractionGraph {
    let mut g = InteractionGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random k-tree on `n >= k + 1` vertices with shuffled labels; `k = 1`
/// gives a tree.
pub fn random_k_tree(rng: &mut impl Rng, n: usize, k: usize) -> InteractionGraph {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut g = InteractionGraph::new(n);
    let mut cliques: Vec<Vec<usize>> = vec![(0..=k).collect()];
    for u in 0..=k {
        for v in u + 1..=k {
            g.add_edge(label[u], label[v]);
        }
    }
    for new in k + 1..n {
        let base = cliques[rng.gen_range(0..cliques.len())].clone();
        let drop = rng.gen_range(0..base.len());
        let mut sub: Vec<usize> = base
            .iter()
            .copied()
            .enumerate()
            .filter(|&(i, _)| i != drop)
            .map(|(_, v)| v)
            .collect();
        for &u in &sub {
            g.add_edge(label[u], label[new]);
        }
        sub.push(new);
        cliques.push(sub);
    }
    g
}

pub fn path(n: usize) -> InteractionGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    InteractionGraph::from_edges(n, &edges)
}

/// Width at each step computed without the elimination game: when `x` is
/// eliminated, its neighbors in the current graph are exactly the remaining
/// vertices reachable from `x` through already-eliminated vertices.
pub fn naive_step_widths(g: &InteractionGraph, order: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut eliminated = vec![false; n];
    let mut widths = Vec::with_capacity(n);
    for &x in order {
        let mut seen = vec![false; n];
        seen[x] = true;
        let mut stack = vec![x];
        let mut count = 0;
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                if eliminated[w] {
                    stack.push(w);
                } else {
                    count += 1;
                }
            }
        }
        widths.push(count);
        eliminated[x] = true;
    }
    widths
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Small instance with mixed relations, non-binary domains, multi-variable
/// linear components and tabular components that may contain `NegInf`.
pub fn random_mixed_instance(rng: &mut impl Rng, n: usize) -> DopInstance {
    let mut inst = DopInstance::binary("mixed", n);
    for d in inst.domains.iter_mut() {
        if rng.gen_bool(0.3) {
            let size = rng.gen_range(1..=3);
            let mut vals: Vec<i64> = (-2..=3).collect();
            vals.shuffle(rng);
            vals.truncate(size);
            *d = vals;
        }
    }
    let scope = |rng: &mut dyn rand::RngCore, max: usize| -> Vec<usize> {
        let k = rng.gen_range(1..=max.min(n));
        let mut all: Vec<usize> = (0..n).collect();
        all.shuffle(rng);
        all.truncate(k);
        all
    };
    for _ in 0..rng.gen_range(1..=n + 1) {
        let s = scope(rng, 3);
        if rng.gen_bool(0.3) {
            let size: usize = s.iter().map(|&v| inst.domains[v].len()).product();
            let values = (0..size)
                .map(|_| {
                    if rng.gen_bool(0.1) {
                        Score::NegInf
                    } else {
                        Score::Finite(rng.gen_range(-5..=9))
                    }
                })
                .collect();
            inst.components.push(ObjectiveComponent {
                scope: s,
                kind: ComponentKind::Tabular(values),
            });
        } else {
            let coeffs = s.iter().map(|_| rng.gen_range(-4..=9)).collect();
            inst.components.push(ObjectiveComponent::linear(s, coeffs));
        }
    }
    for _ in 0..rng.gen_range(0..=n) {
        let s = scope(rng, 4);
        let coeffs: Vec<i64> = s.iter().map(|_| rng.gen_range(-3..=5)).collect();
        let relation = [Relation::Le, Relation::Le, Relation::Ge, Relation::Eq][rng.gen_range(0..4)];
        let rhs = rng.gen_range(-2..=6);
        inst.constraints.push(LinearConstraint::new(s, coeffs, relation, rhs));
    }
    inst
}
