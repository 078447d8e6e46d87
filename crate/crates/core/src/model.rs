//! Discrete optimization problems: maximize a sum of objective components
//! over finite integer domains, subject to relational linear constraints.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Extended integer objective value. `NegInf` marks an infeasible
/// combination: it sorts below every finite value and absorbs addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Score {
    NegInf,
    Finite(i64),
}

impl Score {
    pub const ZERO: Score = Score::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Score::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Score::Finite(v) => Some(v),
            Score::NegInf => None,
        }
    }

    /// Sum with `NegInf` absorption. `None` on i64 overflow.
    pub fn checked_add(self, other: Score) -> Option<Score> {
        match (self, other) {
            (Score::Finite(a), Score::Finite(b)) => a.checked_add(b).map(Score::Finite),
            _ => Some(Score::NegInf),
        }
    }
}

impl Default for Score {
    fn default() -> Self {
        Score::ZERO
    }
}

impl From<i64> for Score {
    fn from(v: i64) -> Self {
        Score::Finite(v)
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Score::NegInf => f.write_str("-inf"),
            Score::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for Score {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "-inf" {
            Ok(Score::NegInf)
        } else {
            s.parse().map(Score::Finite)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: i128, rhs: i128) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Relation::Le => "le",
            Relation::Eq => "eq",
            Relation::Ge => "ge",
        }
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "le" => Ok(Relation::Le),
            "eq" => Ok(Relation::Eq),
            "ge" => Ok(Relation::Ge),
            other => Err(format!("unknown relation `{other}` (expected le, eq or ge)")),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    /// Coefficients aligned with the scope; the value is their dot product
    /// with the assigned domain values.
    Linear(Vec<i64>),
    /// One value per scope assignment, row-major over domain positions
    /// (the last scope variable varies fastest).
    Tabular(Vec<Score>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectiveComponent {
    pub scope: Vec<usize>,
    pub kind: ComponentKind,
}

impl ObjectiveComponent {
    pub fn linear(scope: Vec<usize>, coefficients: Vec<i64>) -> Self {
        ObjectiveComponent {
            scope,
            kind: ComponentKind::Linear(coefficients),
        }
    }

    pub fn tabular(scope: Vec<usize>, values: Vec<Score>) -> Self {
        ObjectiveComponent {
            scope,
            kind: ComponentKind::Tabular(values),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub scope: Vec<usize>,
    pub coefficients: Vec<i64>,
    pub relation: Relation,
    pub rhs: i64,
}

impl LinearConstraint {
    pub fn new(scope: Vec<usize>, coefficients: Vec<i64>, relation: Relation, rhs: i64) -> Self {
        LinearConstraint {
            scope,
            coefficients,
            relation,
            rhs,
        }
    }

    /// Checks the relation given the values of the scope variables, in
    /// scope order. Accumulates in i128 so the result is exact.
    pub fn satisfied_by(&self, values: impl IntoIterator<Item = i64>) -> bool {
        let lhs: i128 = self
            .coefficients
            .iter()
            .zip(values)
            .map(|(&a, x)| a as i128 * x as i128)
            .sum();
        self.relation.holds(lhs, self.rhs as i128)
    }
}

/// A discrete optimization problem. Variables are the dense indices
/// `0..domains.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DopInstance {
    pub name: String,
    pub domains: Vec<Vec<i64>>,
    pub components: Vec<ObjectiveComponent>,
    pub constraints: Vec<LinearConstraint>,
}

impl DopInstance {
    /// `n` binary variables with no components or constraints.
    pub fn binary(name: impl Into<String>, n: usize) -> Self {
        DopInstance {
            name: name.into(),
            domains: vec![vec![0, 1]; n],
            components: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.domains.len()
    }

    pub fn m(&self) -> usize {
        self.constraints.len()
    }

    pub fn domain_size(&self, var: usize) -> usize {
        self.domains[var].len()
    }

    /// Position of `value` within the domain of `var`.
    pub fn domain_position(&self, var: usize, value: i64) -> Option<usize> {
        self.domains[var].iter().position(|&d| d == value)
    }

    /// Product of all domain sizes, i.e. the size of the assignment space.
    pub fn assignment_space(&self) -> u128 {
        self.domains
            .iter()
            .map(|d| d.len() as u128)
            .try_fold(1u128, |acc, s| acc.checked_mul(s))
            .unwrap_or(u128::MAX)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_instance(self)
    }

    pub fn evaluate_objective(&self, a: &Assignment) -> Result<Score> {
        evaluate_objective(self, a)
    }

    pub fn check_feasible(&self, a: &Assignment) -> Result<bool> {
        check_feasible(self, a)
    }
}

/// Values chosen for some or all variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<Option<i64>>,
}

impl Assignment {
    pub fn empty(n: usize) -> Self {
        Assignment { values: vec![None; n] }
    }

    pub fn total(values: Vec<i64>) -> Self {
        Assignment {
            values: values.into_iter().map(Some).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, var: usize) -> Option<i64> {
        self.values.get(var).copied().flatten()
    }

    pub fn set(&mut self, var: usize, value: i64) {
        if var >= self.values.len() {
            self.values.resize(var + 1, None);
        }
        self.values[var] = Some(value);
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    /// The assigned values, if every variable is assigned.
    pub fn to_values(&self) -> Option<Vec<i64>> {
        self.values.iter().copied().collect()
    }

    fn require(&self, var: usize) -> Result<i64> {
        self.get(var).ok_or(Error::Unassigned(var))
    }

    /// Errors if some assigned value lies outside its variable's domain.
    pub fn check_domains(&self, instance: &DopInstance) -> Result<()> {
        for (var, value) in self.values.iter().enumerate() {
            if let Some(value) = *value {
                if var >= instance.n() || instance.domain_position(var, value).is_none() {
                    return Err(Error::NotInDomain { var, value });
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Issue {
    EmptyDomain {
        var: usize,
    },
    DuplicateDomainValue {
        var: usize,
        value: i64,
    },
    ComponentIndexOutOfRange {
        component: usize,
        var: usize,
    },
    ComponentDuplicateScope {
        component: usize,
        var: usize,
    },
    ComponentSizeMismatch {
        component: usize,
        expected: u128,
        found: usize,
    },
    ConstraintIndexOutOfRange {
        constraint: usize,
        var: usize,
    },
    ConstraintDuplicateScope {
        constraint: usize,
        var: usize,
    },
    ConstraintSizeMismatch {
        constraint: usize,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::EmptyDomain { var } => write!(f, "variable {var}: empty domain"),
            Issue::DuplicateDomainValue { var, value } => {
                write!(f, "variable {var}: duplicate domain value {value}")
            }
            Issue::ComponentIndexOutOfRange { component, var } => {
                write!(f, "component {component}: variable index {var} out of range")
            }
            Issue::ComponentDuplicateScope { component, var } => {
                write!(f, "component {component}: variable {var} repeated in scope")
            }
            Issue::ComponentSizeMismatch {
                component,
                expected,
                found,
            } => {
                write!(f, "component {component}: expected {expected} entries, found {found}")
            }
            Issue::ConstraintIndexOutOfRange { constraint, var } => {
                write!(f, "constraint {constraint}: variable index {var} out of range")
            }
            Issue::ConstraintDuplicateScope { constraint, var } => {
                write!(f, "constraint {constraint}: variable {var} repeated in scope")
            }
            Issue::ConstraintSizeMismatch {
                constraint,
                expected,
                found,
            } => {
                write!(
                    f,
                    "constraint {constraint}: expected {expected} coefficients, found {found}"
                )
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            return Ok(());
        }
        let text: Vec<String> = self.issues.iter().map(ToString::to_string).collect();
        Err(Error::InvalidInstance(text.join("; ")))
    }
}

fn first_duplicate(scope: &[usize]) -> Option<usize> {
    scope
        .iter()
        .enumerate()
        .find(|(i, v)| scope[..*i].contains(v))
        .map(|(_, &v)| v)
}

pub fn validate_instance(instance: &DopInstance) -> ValidationReport {
    let n = instance.n();
    let mut issues = Vec::new();

    for (var, domain) in instance.domains.iter().enumerate() {
        if domain.is_empty() {
            issues.push(Issue::EmptyDomain { var });
        }
        for (i, &value) in domain.iter().enumerate() {
            if domain[..i].contains(&value) {
                issues.push(Issue::DuplicateDomainValue { var, value });
                break;
            }
        }
    }

    for (k, comp) in instance.components.iter().enumerate() {
        let mut in_range = true;
        for &var in &comp.scope {
            if var >= n {
                issues.push(Issue::ComponentIndexOutOfRange { component: k, var });
                in_range = false;
            }
        }
        if let Some(var) = first_duplicate(&comp.scope) {
            issues.push(Issue::ComponentDuplicateScope { component: k, var });
        }
        match &comp.kind {
            ComponentKind::Linear(coeffs) => {
                if coeffs.len() != comp.scope.len() {
                    issues.push(Issue::ComponentSizeMismatch {
                        component: k,
                        expected: comp.scope.len() as u128,
                        found: coeffs.len(),
                    });
                }
            }
            ComponentKind::Tabular(values) if in_range => {
                let expected = comp
                    .scope
                    .iter()
                    .map(|&v| instance.domains[v].len() as u128)
                    .product::<u128>();
                if expected != values.len() as u128 {
                    issues.push(Issue::ComponentSizeMismatch {
                        component: k,
                        expected,
                        found: values.len(),
                    });
                }
            }
            ComponentKind::Tabular(_) => {}
        }
    }

    for (i, con) in instance.constraints.iter().enumerate() {
        for &var in &con.scope {
            if var >= n {
                issues.push(Issue::ConstraintIndexOutOfRange { constraint: i, var });
            }
        }
        if let Some(var) = first_duplicate(&con.scope) {
            issues.push(Issue::ConstraintDuplicateScope { constraint: i, var });
        }
        if con.coefficients.len() != con.scope.len() {
            issues.push(Issue::ConstraintSizeMismatch {
                constraint: i,
                expected: con.scope.len(),
                found: con.coefficients.len(),
            });
        }
    }

    ValidationReport { issues }
}

/// Value of one component under `a`.
pub fn evaluate_component(instance: &DopInstance, comp: &ObjectiveComponent, a: &Assignment) -> Result<Score> {
    match &comp.kind {
        ComponentKind::Linear(coeffs) => {
            let mut total: i64 = 0;
            for (&var, &c) in comp.scope.iter().zip(coeffs) {
                let term = c
                    .checked_mul(a.require(var)?)
                    .ok_or(Error::Overflow("evaluating the objective"))?;
                total = total
                    .checked_add(term)
                    .ok_or(Error::Overflow("evaluating the objective"))?;
            }
            Ok(Score::Finite(total))
        }
        ComponentKind::Tabular(values) => {
            let mut index = 0usize;
            for &var in &comp.scope {
                let value = a.require(var)?;
                let pos = instance
                    .domain_position(var, value)
                    .ok_or(Error::NotInDomain { var, value })?;
                index = index * instance.domain_size(var) + pos;
            }
            Ok(values[index])
        }
    }
}

/// Sum of all objective components under `a`; `NegInf` if any tabular
/// component is `NegInf` there.
pub fn evaluate_objective(instance: &DopInstance, a: &Assignment) -> Result<Score> {
    instance.components.iter().try_fold(Score::ZERO, |acc, comp| {
        let value = evaluate_component(instance, comp, a)?;
        acc.checked_add(value)
            .ok_or(Error::Overflow("evaluating the objective"))
    })
}

pub fn check_feasible(instance: &DopInstance, a: &Assignment) -> Result<bool> {
    for con in &instance.constraints {
        let values = con.scope.iter().map(|&v| a.require(v)).collect::<Result<Vec<_>>>()?;
        if !con.satisfied_by(values) {
            return Ok(false);
        }
    }
    Ok(true)
}

impl PartialOrd for Assignment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Assignment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.values.cmp(&other.values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_var() -> DopInstance {
        let mut inst = DopInstance::binary("t", 2);
        inst.components.push(ObjectiveComponent::linear(vec![0], vec![5]));
        inst.components.push(ObjectiveComponent::linear(vec![1], vec![3]));
        inst.constraints
            .push(LinearConstraint::new(vec![0, 1], vec![1, 1], Relation::Le, 1));
        inst
    }

    #[test]
    fn score_ordering_and_absorption() {
        assert!(Score::NegInf < Score::Finite(i64::MIN));
        assert_eq!(Score::Finite(2).checked_add(Score::NegInf), Some(Score::NegInf));
        assert_eq!(Score::NegInf.checked_add(Score::Finite(2)), Some(Score::NegInf));
        assert_eq!(Score::Finite(i64::MAX).checked_add(Score::Finite(1)), None);
        assert_eq!("-inf".parse::<Score>().unwrap(), Score::NegInf);
        assert_eq!(Score::Finite(-3).to_string(), "-3");
    }

    #[test]
    fn well_formed_instance_validates() {
        assert!(validate_instance(&two_var()).is_ok());
    }

    #[test]
    fn out_of_range_constraint_is_reported() {
        let mut inst = two_var();
        inst.constraints
            .push(LinearConstraint::new(vec![0, 2], vec![1, 1], Relation::Le, 1));
        let report = validate_instance(&inst);
        assert_eq!(
            report.issues,
            vec![Issue::ConstraintIndexOutOfRange { constraint: 1, var: 2 }]
        );
        assert!(report.into_result().is_err());
    }

    #[test]
    fn tabular_size_mismatch_is_reported() {
        let mut inst = two_var();
        inst.components
            .push(ObjectiveComponent::tabular(vec![0, 1], vec![Score::ZERO; 3]));
        let report = validate_instance(&inst);
        assert_eq!(
            report.issues,
            vec![Issue::ComponentSizeMismatch {
                component: 2,
                expected: 4,
                found: 3
            }]
        );
    }

    #[test]
    fn domain_and_scope_duplicates_are_reported() {
        let mut inst = two_var();
        inst.domains[1] = vec![0, 0];
        inst.domains.push(Vec::new());
        inst.components.push(ObjectiveComponent::linear(vec![1, 1], vec![1, 1]));
        let report = validate_instance(&inst);
        assert!(report
            .issues
            .contains(&Issue::DuplicateDomainValue { var: 1, value: 0 }));
        assert!(report.issues.contains(&Issue::EmptyDomain { var: 2 }));
        assert!(report
            .issues
            .contains(&Issue::ComponentDuplicateScope { component: 2, var: 1 }));
    }

    #[test]
    fn evaluates_linear_objective() {
        let inst = two_var();
        assert_eq!(
            evaluate_objective(&inst, &Assignment::total(vec![1, 0])).unwrap(),
            Score::Finite(5)
        );
        let empty = DopInstance::binary("e", 2);
        assert_eq!(
            evaluate_objective(&empty, &Assignment::total(vec![1, 1])).unwrap(),
            Score::ZERO
        );
    }

    #[test]
    fn tabular_components_sum_lookups() {
        let mut inst = DopInstance::binary("tab", 2);
        let t1 = vec![Score::Finite(2), Score::Finite(7)];
        let t2 = vec![Score::Finite(1), Score::NegInf, Score::Finite(4), Score::Finite(-3)];
        inst.components.push(ObjectiveComponent::tabular(vec![0], t1.clone()));
        inst.components
            .push(ObjectiveComponent::tabular(vec![0, 1], t2.clone()));
        for x0 in 0..2i64 {
            for x1 in 0..2i64 {
                let expected = t1[x0 as usize].checked_add(t2[(x0 * 2 + x1) as usize]).unwrap();
                let got = evaluate_objective(&inst, &Assignment::total(vec![x0, x1])).unwrap();
                assert_eq!(got, expected, "x=({x0},{x1})");
            }
        }
        assert_eq!(
            evaluate_objective(&inst, &Assignment::total(vec![0, 1])).unwrap(),
            Score::NegInf
        );
    }

    #[test]
    fn unassigned_variable_is_an_error() {
        let inst = two_var();
        let mut a = Assignment::empty(2);
        a.set(0, 1);
        assert_eq!(evaluate_objective(&inst, &a), Err(Error::Unassigned(1)));
        assert_eq!(check_feasible(&inst, &a), Err(Error::Unassigned(1)));
    }

    #[test]
    fn feasibility_of_packing_constraint() {
        let inst = two_var();
        assert!(check_feasible(&inst, &Assignment::total(vec![1, 0])).unwrap());
        assert!(!check_feasible(&inst, &Assignment::total(vec![1, 1])).unwrap());
    }

    #[test]
    fn assignment_domain_check() {
        let inst = two_var();
        assert!(Assignment::total(vec![1, 0]).check_domains(&inst).is_ok());
        assert_eq!(
            Assignment::total(vec![2, 0]).check_domains(&inst),
            Err(Error::NotInDomain { var: 0, value: 2 })
        );
    }
}
