//! Line-oriented instance text format.
//!
//! ```text
//! # comment
//! vars 3
//! dom 2 0 1 2
//! obj 0 5 1 3 2 1
//! con le 1 : 0 1 1 1
//! ```
//!
//! Indices are 0-based. A variable without a `dom` line is binary. Every
//! `obj` term becomes its own single-variable linear component.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{ComponentKind, DopInstance, LinearConstraint, ObjectiveComponent};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

fn parse_var(tok: &str, line: usize, n: usize) -> Result<usize> {
    let var: usize = parse_num(tok, line, "variable index")?;
    if var >= n {
        return Err(parse_err(line, format!("variable index {var} out of range (vars {n})")));
    }
    Ok(var)
}

fn parse_terms(toks: &[&str], line: usize, n: usize) -> Result<(Vec<usize>, Vec<i64>)> {
    if !toks.len().is_multiple_of(2) {
        return Err(parse_err(line, "terms must be `<index> <coefficient>` pairs"));
    }
    let mut vars = Vec::with_capacity(toks.len() / 2);
    let mut coeffs = Vec::with_capacity(toks.len() / 2);
    for pair in toks.chunks(2) {
        vars.push(parse_var(pair[0], line, n)?);
        coeffs.push(parse_num(pair[1], line, "coefficient")?);
    }
    Ok((vars, coeffs))
}

/// Parses an instance and validates it.
pub fn parse_instance(text: &str, name: &str) -> Result<DopInstance> {
    let mut instance: Option<DopInstance> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        let keyword = toks[0];

        if keyword == "vars" {
            if instance.is_some() {
                return Err(parse_err(line, "duplicate `vars` line"));
            }
            if toks.len() != 2 {
                return Err(parse_err(line, "expected `vars <n>`"));
            }
            let n: usize = parse_num(toks[1], line, "variable count")?;
            instance = Some(DopInstance::binary(name, n));
            continue;
        }

        let inst = match instance.as_mut() {
            Some(inst) => inst,
            None if matches!(keyword, "dom" | "obj" | "con") => {
                return Err(parse_err(line, format!("`{keyword}` before `vars`")));
            }
            None => return Err(parse_err(line, format!("unknown keyword `{keyword}`"))),
        };
        let n = inst.n();

        match keyword {
            "dom" => {
                if toks.len() < 3 {
                    return Err(parse_err(line, "expected `dom <j> <v1> ...`"));
                }
                let var = parse_var(toks[1], line, n)?;
                let values = toks[2..]
                    .iter()
                    .map(|t| parse_num(t, line, "domain value"))
                    .collect::<Result<Vec<i64>>>()?;
                inst.domains[var] = values;
            }
            "obj" => {
                let (vars, coeffs) = parse_terms(&toks[1..], line, n)?;
                for (var, c) in vars.into_iter().zip(coeffs) {
                    inst.components.push(ObjectiveComponent::linear(vec![var], vec![c]));
                }
            }
            "con" => {
                if toks.len() < 4 || toks[3] != ":" {
                    return Err(parse_err(line, "expected `con <le|eq|ge> <rhs> : <j> <a> ...`"));
                }
                let relation = toks[1].parse().map_err(|e: String| parse_err(line, e))?;
                let rhs = parse_num(toks[2], line, "right-hand side")?;
                let (scope, coefficients) = parse_terms(&toks[4..], line, n)?;
                inst.constraints.push(LinearConstraint {
                    scope,
                    coefficients,
                    relation,
                    rhs,
                });
            }
            other => return Err(parse_err(line, format!("unknown keyword `{other}`"))),
        }
    }

    let instance = instance.ok_or_else(|| parse_err(0, "missing `vars` line"))?;
    instance.validate().into_result()?;
    Ok(instance)
}

/// Serializes an instance. Only single-variable linear objective
/// components are representable.
pub fn write_instance(instance: &DopInstance) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "# {}", instance.name).unwrap();
    writeln!(out, "vars {}", instance.n()).unwrap();
    for (var, domain) in instance.domains.iter().enumerate() {
        if domain.as_slice() != [0, 1] {
            write!(out, "dom {var}").unwrap();
            for v in domain {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
    }
    if !instance.components.is_empty() {
        out.push_str("obj");
        for (k, comp) in instance.components.iter().enumerate() {
            match (&comp.kind, comp.scope.as_slice()) {
                (ComponentKind::Linear(c), [var]) => write!(out, " {var} {}", c[0]).unwrap(),
                _ => {
                    return Err(Error::Unsupported(format!(
                        "component {k} is not a single-variable linear term"
                    )))
                }
            }
        }
        out.push('\n');
    }
    for con in &instance.constraints {
        write!(out, "con {} {} :", con.relation, con.rhs).unwrap();
        for (var, a) in con.scope.iter().zip(&con.coefficients) {
            write!(out, " {var} {a}").unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}
