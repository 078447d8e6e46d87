//! Hypergraph structures and random linear binary instances built on them.
//!
//! All randomness comes from `ChaCha8Rng` seeded with `seed_from_u64`, with
//! `rand` 0.8 sampling. Generation is a pure function of its inputs.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{DopInstance, LinearConstraint, ObjectiveComponent, Relation};

/// Upper bound on coefficient redraws for a single hyperedge.
const MAX_COEFF_RETRIES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        for (i, e) in edges.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::Generator(format!("hyperedge {i} is empty")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::Generator(format!("hyperedge {i}: vertex {v} out of range")));
            }
            let distinct: BTreeSet<_> = e.iter().collect();
            if distinct.len() != e.len() {
                return Err(Error::Generator(format!("hyperedge {i} repeats a vertex")));
            }
        }
        Ok(Hypergraph { n, edges })
    }

    /// Serializes with a `verts` header and one bare index line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("verts {}\n", self.n);
        for e in &self.edges {
            let parts: Vec<String> = e.iter().map(ToString::to_string).collect();
            writeln!(out, "{}", parts.join(" ")).unwrap();
        }
        out
    }
}

/// Parses a hypergraph.
///
/// Lines are either `name(v1,v2,...)` (an optional trailing `,` or `.` is
/// allowed) or bare whitespace-separated vertices. Without a `verts <n>`
/// header, vertex names map to dense indices in order of first appearance.
/// With the header, vertices must be integer indices below `n`.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut declared: Option<usize> = None;
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("verts") {
            if !edges.is_empty() || declared.is_some() {
                return Err(err(line, "`verts` must be the first line".into()));
            }
            let n = rest
                .trim()
                .parse()
                .map_err(|_| err(line, format!("invalid vertex count `{}`", rest.trim())))?;
            declared = Some(n);
            continue;
        }

        let tokens: Vec<&str> = match trimmed.find('(') {
            Some(open) => {
                let body = trimmed.trim_end_matches([',', '.']).trim_end();
                if !body.ends_with(')') || body[..open].trim().is_empty() {
                    return Err(err(line, format!("malformed hyperedge `{trimmed}`")));
                }
                body[open + 1..body.len() - 1].split(',').map(str::trim).collect()
            }
            None => trimmed.split_whitespace().collect(),
        };
        if tokens.iter().all(|t| t.is_empty()) {
            return Err(err(line, "empty hyperedge".into()));
        }

        let mut edge = Vec::with_capacity(tokens.len());
        for tok in tokens {
            if tok.is_empty() || tok.contains(char::is_whitespace) || tok.contains(['(', ')']) {
                return Err(err(line, format!("malformed vertex name `{tok}`")));
            }
            let v = match declared {
                Some(n) => {
                    let v: usize = tok
                        .parse()
                        .map_err(|_| err(line, format!("vertex `{tok}` is not an index")))?;
                    if v >= n {
                        return Err(err(line, format!("vertex {v} out of range (verts {n})")));
                    }
                    v
                }
                None => {
                    let next = names.len();
                    *names.entry(tok.to_string()).or_insert(next)
                }
            };
            if !edge.contains(&v) {
                edge.push(v);
            }
        }
        edges.push(edge);
    }

    if edges.is_empty() {
        return Err(err(0, "no hyperedges".into()));
    }
    Hypergraph::new(declared.unwrap_or(names.len()), edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub coeff_lo: i64,
    pub coeff_hi: i64,
    pub relation: Relation,
}

impl GeneratorConfig {
    pub fn with_seed(seed: u64) -> Self {
        GeneratorConfig {
            seed,
            ..GeneratorConfig::default()
        }
    }

    fn check(&self) -> Result<()> {
        if self.coeff_lo < 1 || self.coeff_lo > self.coeff_hi {
            return Err(Error::Generator(format!(
                "coefficient range [{}, {}] must satisfy 1 <= lo <= hi",
                self.coeff_lo, self.coeff_hi
            )));
        }
        Ok(())
    }
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            coeff_lo: 1,
            coeff_hi: 100,
            relation: Relation::Le,
        }
    }
}

/// One binary variable per vertex and one constraint per hyperedge:
/// `sum(a_j x_j) R floor(sigma * sum(a_j))` with `a_j` uniform in the
/// coefficient range and `sigma` uniform in (0, 1), redrawn until the
/// right-hand side is at least 1. The objective `sum(c_j x_j)` is stored as
/// one single-variable component per vertex.
pub fn generate_instance(h: &Hypergraph, cfg: &GeneratorConfig, name: &str) -> Result<DopInstance> {
    cfg.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut inst = DopInstance::binary(name, h.n);

    for (i, edge) in h.edges.iter().enumerate() {
        let mut attempt = 0;
        let coefficients = loop {
            let coeffs: Vec<i64> = edge
                .iter()
                .map(|_| rng.gen_range(cfg.coeff_lo..=cfg.coeff_hi))
                .collect();
            if coeffs.iter().sum::<i64>() >= 2 {
                break coeffs;
            }
            attempt += 1;
            if attempt == MAX_COEFF_RETRIES {
                return Err(Error::Generator(format!(
                    "hyperedge {i}: coefficient sum stays below 2, no right-hand side >= 1 exists"
                )));
            }
        };
        let total = coefficients.iter().sum::<i64>();
        let rhs = loop {
            let sigma: f64 = rng.gen();
            let rhs = (sigma * total as f64).floor() as i64;
            if sigma > 0.0 && rhs >= 1 && rhs < total {
                break rhs;
            }
        };
        inst.constraints
            .push(LinearConstraint::new(edge.clone(), coefficients, cfg.relation, rhs));
    }

    for j in 0..h.n {
        let c = rng.gen_range(cfg.coeff_lo..=cfg.coeff_hi);
        inst.components.push(ObjectiveComponent::linear(vec![j], vec![c]));
    }
    Ok(inst)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Windows of `width` consecutive vertices, each overlapping the previous
    /// one in `overlap` vertices. A final window is aligned to the end if the
    /// stride leaves trailing vertices uncovered.
    Chain {
        length: usize,
        overlap: usize,
        width: usize,
    },
    /// 2-vertex edges of a `rows x cols` lattice.
    Grid { rows: usize, cols: usize },
    /// `m` distinct `k`-subsets of `n` vertices.
    RandomKUniform { n: usize, k: usize, m: usize, seed: u64 },
}

impl Family {
    /// Short identifier suitable for instance names.
    pub fn label(&self) -> String {
        match self {
            Family::Chain { length, overlap, width } => format!("chain_{length}_{width}_{overlap}"),
            Family::Grid { rows, cols } => format!("grid_{rows}x{cols}"),
            Family::RandomKUniform { n, k, m, seed } => format!("random_{n}_{k}_{m}_s{seed}"),
        }
    }
}

pub fn synth_family(family: Family) -> Result<Hypergraph> {
    let bad = |msg: String| Err(Error::Generator(msg));
    match family {
        Family::Chain { length, overlap, width } => {
            if width == 0 || overlap >= width || length < width {
                return bad(format!(
                    "chain needs 1 <= width <= length and overlap < width (length {length}, overlap {overlap}, width {width})"
                ));
            }
            let stride = width - overlap;
            let mut edges = Vec::new();
            let mut start = 0;
            while start + width <= length {
                edges.push((start..start + width).collect::<Vec<_>>());
                start += stride;
            }
            if start - stride + width < length {
                edges.push((length - width..length).collect());
            }
            Hypergraph::new(length, edges)
        }
        Family::Grid { rows, cols } => {
            if rows == 0 || cols == 0 || rows * cols < 2 {
                return bad(format!("grid {rows}x{cols} has no edges"));
            }
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    let v = r * cols + c;
                    if c + 1 < cols {
                        edges.push(vec![v, v + 1]);
                    }
                    if r + 1 < rows {
                        edges.push(vec![v, v + cols]);
                    }
                }
            }
            Hypergraph::new(rows * cols, edges)
        }
        Family::RandomKUniform { n, k, m, seed } => {
            if k == 0 || k > n || m == 0 {
                return bad(format!(
                    "random family needs 1 <= k <= n and m >= 1 (n {n}, k {k}, m {m})"
                ));
            }
            let available = binomial(n as u128, k as u128);
            if (m as u128) > available {
                return bad(format!(
                    "only {available} distinct {k}-sets exist on {n} vertices, asked for {m}"
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut seen = BTreeSet::new();
            let mut edges = Vec::with_capacity(m);
            while edges.len() < m {
                let mut e = index::sample(&mut rng, n, k).into_vec();
                e.sort_unstable();
                if seen.insert(e.clone()) {
                    edges.push(e);
                }
            }
            Hypergraph::new(n, edges)
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}
