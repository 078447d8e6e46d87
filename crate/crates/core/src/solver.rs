//! Variable elimination along a fixed ordering.
//!
//! Eliminating `v` consumes every live objective factor and every unconsumed
//! constraint that mentions `v`, and replaces them with one table over the
//! current neighbors of `v`: for each assignment of the neighbors, the best
//! achievable value over the domain of `v`. Each table also stores the
//! maximizing value of `v`, and a backward pass in reverse elimination order
//! reads those off to rebuild an optimal assignment.
//!
//! A constraint is consumed when the first of its variables is eliminated.
//! Its scope is a clique of the interaction graph, so at that point all of
//! its other variables are neighbors of the eliminated one.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{build_interaction_graph, EliminationGraph, EliminationOrdering, EliminationStep, EliminationTrace};
use crate::model::{Assignment, ComponentKind, DopInstance, Score};

/// Default per-table cell budget.
pub const DEFAULT_CELL_BUDGET: u64 = 1 << 25;

/// Default cap on the assignment space for [`brute_force_solve`].
pub const DEFAULT_ORACLE_BOUND: u128 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest admissible table, counted over the eliminated variable and
    /// its neighbors.
    pub cell_budget: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            cell_budget: DEFAULT_CELL_BUDGET,
        }
    }
}

/// The message produced by eliminating one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalTable {
    pub eliminated_var: usize,
    /// Sorted neighbors of the eliminated variable at elimination time.
    pub scope: Vec<usize>,
    /// Row-major over the scope's domain positions.
    pub values: Vec<Score>,
    /// Maximizing value of the eliminated variable per row; `None` exactly
    /// where the row is `NegInf`.
    pub argmax: Vec<Option<i64>>,
}

impl LocalTable {
    fn row_of(&self, instance: &DopInstance, a: &Assignment) -> Result<usize> {
        let mut row = 0;
        for &var in &self.scope {
            let value = a.get(var).ok_or(Error::Unassigned(var))?;
            let pos = instance
                .domain_position(var, value)
                .ok_or(Error::NotInDomain { var, value })?;
            row = row * instance.domain_size(var) + pos;
        }
        Ok(row)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    /// `step` is the 0-based position in the ordering where the table for
    /// `vertex` would have needed `cells` cells.
    WidthExceeded {
        step: usize,
        vertex: usize,
        cells: u128,
    },
}

impl SolveStatus {
    pub fn token(&self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::WidthExceeded { .. } => "width_exceeded",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Over the steps that were carried out.
    pub induced_width: usize,
    pub total_fill: usize,
    /// Largest total size of simultaneously live elimination tables.
    pub peak_cells: u64,
    pub forward_time: Duration,
    pub backward_time: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    /// `NegInf` unless the status is `Optimal`.
    pub optimum: Score,
    /// Present iff the status is `Optimal`.
    pub assignment: Option<Assignment>,
    pub stats: SolveStats,
}

#[derive(Clone, Debug)]
enum Factor {
    Linear {
        scope: Vec<usize>,
        coefficients: Vec<i64>,
    },
    Table {
        scope: Vec<usize>,
        values: Vec<Score>,
        produced: bool,
    },
}

impl Factor {
    fn scope(&self) -> &[usize] {
        match self {
            Factor::Linear { scope, .. } | Factor::Table { scope, .. } => scope,
        }
    }
}

/// A factor bound to slots of the local variable vector of one elimination.
struct BoundFactor<'f> {
    factor: &'f Factor,
    slots: Vec<usize>,
    radix: Vec<usize>,
}

/// Intermediate state of variable elimination on one instance.
pub struct SolverState<'a> {
    instance: &'a DopInstance,
    config: SolverConfig,
    factors: Vec<Option<Factor>>,
    var_factors: Vec<Vec<usize>>,
    consumed: Vec<bool>,
    var_constraints: Vec<Vec<usize>>,
    graph: EliminationGraph,
    constant: Score,
    tables: Vec<LocalTable>,
    trace: EliminationTrace,
    live_cells: u64,
    peak_cells: u64,
}

impl<'a> SolverState<'a> {
    pub fn new(instance: &'a DopInstance, config: SolverConfig) -> Result<Self> {
        instance.validate().into_result()?;
        let n = instance.n();
        let mut state = SolverState {
            instance,
            config,
            factors: Vec::new(),
            var_factors: vec![Vec::new(); n],
            consumed: vec![false; instance.m()],
            var_constraints: vec![Vec::new(); n],
            graph: EliminationGraph::new(&build_interaction_graph(instance)),
            constant: Score::ZERO,
            tables: Vec::new(),
            trace: EliminationTrace::default(),
            live_cells: 0,
            peak_cells: 0,
        };

        for comp in &instance.components {
            let factor = match &comp.kind {
                ComponentKind::Linear(c) => Factor::Linear {
                    scope: comp.scope.clone(),
                    coefficients: c.clone(),
                },
                ComponentKind::Tabular(v) => Factor::Table {
                    scope: comp.scope.clone(),
                    values: v.clone(),
                    produced: false,
                },
            };
            if factor.scope().is_empty() {
                let value = match &factor {
                    Factor::Table { values, .. } => values[0],
                    Factor::Linear { .. } => Score::ZERO,
                };
                state.add_constant(value)?;
            } else {
                state.push_factor(factor);
            }
        }

        for (i, con) in instance.constraints.iter().enumerate() {
            if con.scope.is_empty() {
                state.consumed[i] = true;
                if !con.satisfied_by(std::iter::empty()) {
                    state.constant = Score::NegInf;
                }
            }
            for &var in &con.scope {
                state.var_constraints[var].push(i);
            }
        }
        Ok(state)
    }

    fn add_constant(&mut self, value: Score) -> Result<()> {
        self.constant = self
            .constant
            .checked_add(value)
            .ok_or(Error::Overflow("accumulating the objective"))?;
        Ok(())
    }

    fn push_factor(&mut self, factor: Factor) {
        let id = self.factors.len();
        for &var in factor.scope() {
            self.var_factors[var].push(id);
        }
        self.factors.push(Some(factor));
    }

    pub fn instance(&self) -> &DopInstance {
        self.instance
    }

    /// Running sum of fully eliminated parts of the objective.
    pub fn constant(&self) -> Score {
        self.constant
    }

    pub fn graph(&self) -> &EliminationGraph {
        &self.graph
    }

    pub fn tables(&self) -> &[LocalTable] {
        &self.tables
    }

    pub fn trace(&self) -> &EliminationTrace {
        &self.trace
    }

    pub fn peak_cells(&self) -> u64 {
        self.peak_cells
    }

    /// Number of live objective factors.
    pub fn live_factor_count(&self) -> usize {
        self.factors.iter().flatten().count()
    }

    /// The constant plus every live factor evaluated at `a`. Only variables
    /// that have not been eliminated need to be assigned.
    pub fn live_value(&self, a: &Assignment) -> Result<Score> {
        let mut total = self.constant;
        for factor in self.factors.iter().flatten() {
            let value = match factor {
                Factor::Linear { scope, coefficients } => {
                    let mut sum: i64 = 0;
                    for (&var, &c) in scope.iter().zip(coefficients) {
                        let x = a.get(var).ok_or(Error::Unassigned(var))?;
                        sum = c
                            .checked_mul(x)
                            .and_then(|t| sum.checked_add(t))
                            .ok_or(Error::Overflow("evaluating the objective"))?;
                    }
                    Score::Finite(sum)
                }
                Factor::Table { scope, values, .. } => {
                    let mut row = 0;
                    for &var in scope {
                        let value = a.get(var).ok_or(Error::Unassigned(var))?;
                        let pos = self
                            .instance
                            .domain_position(var, value)
                            .ok_or(Error::NotInDomain { var, value })?;
                        row = row * self.instance.domain_size(var) + pos;
                    }
                    values[row]
                }
            };
            total = total
                .checked_add(value)
                .ok_or(Error::Overflow("evaluating the objective"))?;
        }
        Ok(total)
    }

    /// Indices of constraints not yet consumed.
    pub fn live_constraints(&self) -> Vec<usize> {
        (0..self.consumed.len()).filter(|&i| !self.consumed[i]).collect()
    }

    /// Eliminates `v`, returning the table that replaces the consumed
    /// factors and constraints.
    pub fn eliminate(&mut self, v: usize) -> Result<&LocalTable> {
        let instance = self.instance;
        let n = instance.n();
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if !self.graph.is_alive(v) {
            return Err(Error::AlreadyEliminated(v));
        }

        let scope: Vec<usize> = self.graph.neighbors(v).iter().copied().collect();
        let cells = scope
            .iter()
            .chain(std::iter::once(&v))
            .map(|&u| instance.domain_size(u) as u128)
            .try_fold(1u128, |acc, s| acc.checked_mul(s))
            .unwrap_or(u128::MAX);
        if cells > self.config.cell_budget as u128 {
            return Err(Error::WidthExceeded {
                vertex: v,
                cells,
                budget: self.config.cell_budget,
            });
        }

        // local slots: scope in order, then v
        let mut slot_of = vec![usize::MAX; n];
        for (i, &u) in scope.iter().enumerate() {
            slot_of[u] = i;
        }
        let v_slot = scope.len();
        slot_of[v] = v_slot;
        let local_vars: Vec<usize> = scope.iter().copied().chain(std::iter::once(v)).collect();
        let radix: Vec<usize> = local_vars.iter().map(|&u| instance.domain_size(u)).collect();

        let factor_ids: Vec<usize> = self.var_factors[v]
            .iter()
            .copied()
            .filter(|&id| self.factors[id].is_some())
            .collect();
        let constraint_ids: Vec<usize> = self.var_constraints[v]
            .iter()
            .copied()
            .filter(|&i| !self.consumed[i])
            .collect();

        let bind = |vars: &[usize]| -> Result<Vec<usize>> {
            vars.iter()
                .map(|&u| match slot_of[u] {
                    usize::MAX => Err(Error::InvalidInstance(format!(
                        "variable {u} shares a scope with {v} but is not its neighbor"
                    ))),
                    s => Ok(s),
                })
                .collect()
        };
        let bound: Vec<BoundFactor<'_>> = factor_ids
            .iter()
            .map(|&id| {
                let factor = self.factors[id].as_ref().unwrap();
                let slots = bind(factor.scope())?;
                let radix = slots.iter().map(|&s| radix[s]).collect();
                Ok(BoundFactor { factor, slots, radix })
            })
            .collect::<Result<_>>()?;
        let bound_constraints: Vec<(Vec<usize>, &crate::model::LinearConstraint)> = constraint_ids
            .iter()
            .map(|&i| {
                let con = &instance.constraints[i];
                Ok((bind(&con.scope)?, con))
            })
            .collect::<Result<_>>()?;

        // domain positions of v in increasing value order, so ties resolve
        // to the smallest value
        let dom_v = &instance.domains[v];
        let mut v_positions: Vec<usize> = (0..dom_v.len()).collect();
        v_positions.sort_by_key(|&p| dom_v[p]);

        let rows: usize = radix[..v_slot].iter().product();
        let mut values = Vec::with_capacity(rows);
        let mut argmax = Vec::with_capacity(rows);
        let mut pos = vec![0usize; local_vars.len()];
        let mut local_values = vec![0i64; local_vars.len()];

        for _ in 0..rows {
            for (i, &u) in local_vars[..v_slot].iter().enumerate() {
                local_values[i] = instance.domains[u][pos[i]];
            }
            let mut best = Score::NegInf;
            let mut best_value = None;
            for &p in &v_positions {
                pos[v_slot] = p;
                local_values[v_slot] = dom_v[p];
                let feasible = bound_constraints
                    .iter()
                    .all(|(slots, con)| con.satisfied_by(slots.iter().map(|&s| local_values[s])));
                if !feasible {
                    continue;
                }
                let mut total = Score::ZERO;
                for bf in &bound {
                    let value = match bf.factor {
                        Factor::Linear { coefficients, .. } => {
                            let mut sum: i64 = 0;
                            for (&s, &c) in bf.slots.iter().zip(coefficients) {
                                sum = c
                                    .checked_mul(local_values[s])
                                    .and_then(|t| sum.checked_add(t))
                                    .ok_or(Error::Overflow("building an elimination table"))?;
                            }
                            Score::Finite(sum)
                        }
                        Factor::Table { values, .. } => {
                            let row = bf.slots.iter().zip(&bf.radix).fold(0, |acc, (&s, &r)| acc * r + pos[s]);
                            values[row]
                        }
                    };
                    total = total
                        .checked_add(value)
                        .ok_or(Error::Overflow("building an elimination table"))?;
                    if total == Score::NegInf {
                        break;
                    }
                }
                if total > best {
                    best = total;
                    best_value = Some(dom_v[p]);
                }
            }
            values.push(best);
            argmax.push(best_value);

            // advance the scope odometer, last variable fastest
            for i in (0..v_slot).rev() {
                pos[i] += 1;
                if pos[i] < radix[i] {
                    break;
                }
                pos[i] = 0;
            }
        }
        drop(bound);

        for id in factor_ids {
            if let Some(Factor::Table {
                values, produced: true, ..
            }) = self.factors[id].take()
            {
                self.live_cells -= values.len() as u64;
            }
        }
        for i in constraint_ids {
            self.consumed[i] = true;
        }

        if scope.is_empty() {
            self.add_constant(values[0])?;
        } else {
            self.live_cells += values.len() as u64;
            self.push_factor(Factor::Table {
                scope: scope.clone(),
                values: values.clone(),
                produced: true,
            });
        }
        self.peak_cells = self.peak_cells.max(self.live_cells.max(values.len() as u64));

        let neighborhood_size = scope.len();
        let fill = self.graph.eliminate(v)?;
        self.trace.push(EliminationStep {
            vertex: v,
            neighborhood_size,
            fill,
        });

        self.tables.push(LocalTable {
            eliminated_var: v,
            scope,
            values,
            argmax,
        });
        Ok(self.tables.last().unwrap())
    }

    /// Reads an optimal assignment off the stored tables, walking them in
    /// reverse elimination order.
    pub fn recover_assignment(&self) -> Result<Assignment> {
        let mut a = Assignment::empty(self.instance.n());
        for table in self.tables.iter().rev() {
            let row = table.row_of(self.instance, &a)?;
            let value = table.argmax[row].ok_or_else(|| {
                Error::InvalidInstance(format!(
                    "no feasible value for variable {} on the recovered path",
                    table.eliminated_var
                ))
            })?;
            a.set(table.eliminated_var, value);
        }
        Ok(a)
    }
}

/// Solves `instance` by eliminating variables along `ord`.
pub fn solve(instance: &DopInstance, ord: &EliminationOrdering, config: SolverConfig) -> Result<SolveResult> {
    let mut state = SolverState::new(instance, config)?;
    if ord.len() != instance.n() {
        return Err(Error::InvalidOrdering {
            n: instance.n(),
            reason: format!("length {} differs from variable count", ord.len()),
        });
    }

    let started = Instant::now();
    for (step, &v) in ord.as_slice().iter().enumerate() {
        match state.eliminate(v) {
            Ok(_) => {}
            Err(Error::WidthExceeded { vertex, cells, .. }) => {
                let stats = SolveStats {
                    induced_width: state.trace.induced_width,
                    total_fill: state.trace.total_fill,
                    peak_cells: state.peak_cells,
                    forward_time: started.elapsed(),
                    backward_time: Duration::ZERO,
                };
                return Ok(SolveResult {
                    status: SolveStatus::WidthExceeded { step, vertex, cells },
                    optimum: Score::NegInf,
                    assignment: None,
                    stats,
                });
            }
            Err(e) => return Err(e),
        }
    }
    let forward_time = started.elapsed();

    let started = Instant::now();
    let (status, assignment) = if state.constant.is_finite() {
        (SolveStatus::Optimal, Some(state.recover_assignment()?))
    } else {
        (SolveStatus::Infeasible, None)
    };
    let backward_time = started.elapsed();

    Ok(SolveResult {
        status,
        optimum: state.constant,
        assignment,
        stats: SolveStats {
            induced_width: state.trace.induced_width,
            total_fill: state.trace.total_fill,
            peak_cells: state.peak_cells,
            forward_time,
            backward_time,
        },
    })
}

/// Exhaustive search. Returns the largest feasible objective and, among the
/// assignments attaining it, the lexicographically smallest by value.
pub fn brute_force_solve(instance: &DopInstance, bound: u128) -> Result<SolveResult> {
    instance.validate().into_result()?;
    let space = instance.assignment_space();
    if space > bound {
        return Err(Error::OracleBound { cells: space, bound });
    }
    let started = Instant::now();
    let sorted: Vec<Vec<i64>> = instance
        .domains
        .iter()
        .map(|d| {
            let mut d = d.clone();
            d.sort_unstable();
            d
        })
        .collect();
    let n = instance.n();
    let mut pos = vec![0usize; n];
    let mut best = Score::NegInf;
    let mut best_assignment = None;

    loop {
        let a = Assignment::total((0..n).map(|j| sorted[j][pos[j]]).collect());
        if instance.check_feasible(&a)? {
            let value = instance.evaluate_objective(&a)?;
            if value > best {
                best = value;
                best_assignment = Some(a);
            }
        }
        // first variable most significant
        let mut j = n;
        loop {
            if j == 0 {
                let status = if best_assignment.is_some() {
                    SolveStatus::Optimal
                } else {
                    SolveStatus::Infeasible
                };
                return Ok(SolveResult {
                    status,
                    optimum: best,
                    assignment: best_assignment,
                    stats: SolveStats {
                        forward_time: started.elapsed(),
                        ..SolveStats::default()
                    },
                });
            }
            j -= 1;
            pos[j] += 1;
            if pos[j] < sorted[j].len() {
                break;
            }
            pos[j] = 0;
        }
    }
}
