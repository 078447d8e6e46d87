//! Interaction graphs and the elimination game.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::DopInstance;

pub type Edge = (usize, usize);

/// Undirected simple graph over dense vertex indices. Neighbor lists are
/// kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct InteractionGraph {
    adjacency: Vec<Vec<usize>>,
}

impl InteractionGraph {
    pub fn new(n: usize) -> Self {
        InteractionGraph {
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Panics if an endpoint is out of range. Self-loops are ignored.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Self {
        let mut g = InteractionGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = InteractionGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Adds `{u, v}`; returns false if it was already present or `u == v`.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        let n = self.n();
        assert!(u < n && v < n, "edge ({u}, {v}) out of range for {n} vertices");
        if u == v {
            return false;
        }
        match self.adjacency[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adjacency[u].insert(pos, v);
                let pos = self.adjacency[v].binary_search(&u).unwrap_err();
                self.adjacency[v].insert(pos, u);
                true
            }
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Sorted neighbors of `v`, excluding `v` itself. Panics if out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edges with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// True when adjacency is symmetric, loop-free, sorted and in range.
    pub fn is_well_formed(&self) -> bool {
        let n = self.n();
        self.adjacency.iter().enumerate().all(|(u, nbrs)| {
            nbrs.windows(2).all(|w| w[0] < w[1])
                && nbrs
                    .iter()
                    .all(|&v| v < n && v != u && self.adjacency[v].binary_search(&u).is_ok())
        })
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in
    /// the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> InteractionGraph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut sub = InteractionGraph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adjacency[v] {
                let j = local[w];
                if j != usize::MAX && j > i {
                    sub.add_edge(i, j);
                }
            }
        }
        sub
    }
}

/// Builds the graph whose edges join variables sharing an objective
/// component or a constraint scope.
pub fn build_interaction_graph(instance: &DopInstance) -> InteractionGraph {
    let mut g = InteractionGraph::new(instance.n());
    let scopes = instance
        .components
        .iter()
        .map(|c| &c.scope)
        .chain(instance.constraints.iter().map(|c| &c.scope));
    for scope in scopes {
        for (i, &u) in scope.iter().enumerate() {
            for &v in &scope[i + 1..] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Open neighborhood of `v`.
pub fn neighborhood(g: &InteractionGraph, v: usize) -> Result<Vec<usize>> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    Ok(g.neighbors(v).to_vec())
}

/// A permutation of `0..n` giving the order in which vertices are eliminated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EliminationOrdering {
    order: Vec<usize>,
}

impl EliminationOrdering {
    pub fn new(order: Vec<usize>, n: usize) -> Result<Self> {
        if order.len() != n {
            return Err(Error::InvalidOrdering {
                n,
                reason: format!("length {} differs from vertex count", order.len()),
            });
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n {
                return Err(Error::InvalidOrdering {
                    n,
                    reason: format!("vertex {v} out of range"),
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidOrdering {
                    n,
                    reason: format!("vertex {v} repeated"),
                });
            }
        }
        Ok(EliminationOrdering { order })
    }

    pub fn identity(n: usize) -> Self {
        EliminationOrdering {
            order: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.order
    }

    /// `positions()[v]` is the step at which `v` is eliminated.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn reversed(&self) -> Self {
        EliminationOrdering {
            order: self.order.iter().rev().copied().collect(),
        }
    }
}

impl std::fmt::Display for EliminationOrdering {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.order.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Working copy of a graph during elimination. Eliminated vertices are
/// tombstoned and keep their index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationGraph {
    adjacency: Vec<BTreeSet<usize>>,
    alive: Vec<bool>,
    remaining: usize,
}

impl EliminationGraph {
    pub fn new(g: &InteractionGraph) -> Self {
        EliminationGraph {
            adjacency: (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect(),
            alive: vec![true; g.n()],
            remaining: g.n(),
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn remaining(&self) -> usize {
        self.remaining
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    pub fn alive_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(|&v| self.alive[v])
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(&v)
    }

    /// Edges that eliminating `v` would add, lexicographically ordered.
    pub fn fill_edges(&self, v: usize) -> Vec<Edge> {
        let nbrs: Vec<usize> = self.adjacency[v].iter().copied().collect();
        let mut fill = Vec::new();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if !self.adjacency[a].contains(&b) {
                    fill.push((a, b));
                }
            }
        }
        fill
    }

    pub fn fill_count(&self, v: usize) -> usize {
        let nbrs: Vec<usize> = self.adjacency[v].iter().copied().collect();
        let mut count = 0;
        for (i, &a) in nbrs.iter().enumerate() {
            let adj = &self.adjacency[a];
            count += nbrs[i + 1..].iter().filter(|b| !adj.contains(b)).count();
        }
        count
    }

    fn check_alive(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        if !self.alive[v] {
            return Err(Error::AlreadyEliminated(v));
        }
        Ok(())
    }

    /// Makes the neighborhood of `v` a clique, then removes `v`. Returns the
    /// added fill edges.
    pub fn eliminate(&mut self, v: usize) -> Result<Vec<Edge>> {
        self.check_alive(v)?;
        let fill = self.fill_edges(v);
        for &(a, b) in &fill {
            self.adjacency[a].insert(b);
            self.adjacency[b].insert(a);
        }
        for u in std::mem::take(&mut self.adjacency[v]) {
            self.adjacency[u].remove(&v);
        }
        self.alive[v] = false;
        self.remaining -= 1;
        Ok(fill)
    }

    /// Non-mutating variant of [`EliminationGraph::eliminate`].
    pub fn eliminated(&self, v: usize) -> Result<(EliminationGraph, Vec<Edge>)> {
        let mut next = self.clone();
        let fill = next.eliminate(v)?;
        Ok((next, fill))
    }

    /// Snapshot as a plain graph; eliminated vertices become isolated.
    pub fn to_graph(&self) -> InteractionGraph {
        InteractionGraph {
            adjacency: self.adjacency.iter().map(|s| s.iter().copied().collect()).collect(),
        }
    }
}

/// The `v`-elimination graph of `g` together with its fill edges. `v`
/// remains as an isolated vertex.
pub fn eliminate_vertex(g: &InteractionGraph, v: usize) -> Result<(InteractionGraph, Vec<Edge>)> {
    let mut work = EliminationGraph::new(g);
    let fill = work.eliminate(v)?;
    Ok((work.to_graph(), fill))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationStep {
    pub vertex: usize,
    pub neighborhood_size: usize,
    pub fill: Vec<Edge>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EliminationTrace {
    pub steps: Vec<EliminationStep>,
    pub induced_width: usize,
    pub total_fill: usize,
}

impl EliminationTrace {
    pub fn push(&mut self, step: EliminationStep) {
        self.induced_width = self.induced_width.max(step.neighborhood_size);
        self.total_fill += step.fill.len();
        self.steps.push(step);
    }
}

pub fn run_elimination_game(g: &InteractionGraph, ord: &EliminationOrdering) -> Result<EliminationTrace> {
    if ord.len() != g.n() {
        return Err(Error::InvalidOrdering {
            n: g.n(),
            reason: format!("length {} differs from vertex count", ord.len()),
        });
    }
    let mut work = EliminationGraph::new(g);
    let mut trace = EliminationTrace::default();
    for &v in ord.as_slice() {
        let neighborhood_size = work.degree(v);
        let fill = work.eliminate(v)?;
        trace.push(EliminationStep {
            vertex: v,
            neighborhood_size,
            fill,
        });
    }
    Ok(trace)
}

pub fn induced_width(g: &InteractionGraph, ord: &EliminationOrdering) -> Result<usize> {
    run_elimination_game(g, ord).map(|t| t.induced_width)
}

/// `n m` header followed by one `u v` line per edge.
pub fn write_edge_list(g: &InteractionGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<InteractionGraph> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let bad = |line: usize, msg: &str| Error::Parse {
        line: line + 1,
        message: msg.to_string(),
    };
    let (hl, header) = lines.next().ok_or_else(|| bad(0, "missing `n m` header"))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad(hl, "malformed header"))?;
    let [n, m] = nums[..] else {
        return Err(bad(hl, "expected `n m`"));
    };
    let mut g = InteractionGraph::new(n);
    let mut count = 0;
    for (line, text) in lines {
        let pair: Vec<usize> = text
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad(line, "malformed edge"))?;
        let [u, v] = pair[..] else {
            return Err(bad(line, "expected `u v`"));
        };
        if u >= n || v >= n || u == v {
            return Err(bad(line, "edge endpoint out of range or self-loop"));
        }
        g.add_edge(u, v);
        count += 1;
    }
    if count != m {
        return Err(bad(hl, "edge count does not match header"));
    }
    Ok(g)
}
