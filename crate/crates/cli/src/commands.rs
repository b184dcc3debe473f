//! The non-suite subcommands. Each returns the text to print; `main` only
//! parses arguments and maps errors to exit codes.

use std::fmt::Write as _;
use std::path::Path;

use defcyc_core::aut::{aut_order, automorphism_group_with_budget, AutError};
use defcyc_core::definability::{definable_closure_in, DefinabilityError};
use defcyc_core::fgabelian::{snf, verify_snf, IntMatrix, MatrixError};
use defcyc_core::folang::{cayley_formula, print_formula, EvalError};
use defcyc_core::group::{by_name, read_cay, CayError};
use defcyc_core::{Dialect, Evaluator, FiniteGroup, GroupError, Limits, Subset};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<AutError> for CliError {
    fn from(e: AutError) -> Self {
        match e {
            AutError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            e => CliError::Usage(e.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            e => CliError::Usage(e.to_string()),
        }
    }
}

impl From<DefinabilityError> for CliError {
    fn from(e: DefinabilityError) -> Self {
        match e {
            DefinabilityError::Aut(e) => e.into(),
            DefinabilityError::Eval(e) => e.into(),
            e => CliError::Usage(e.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// A `.cay` file when the argument names an existing file (or ends in
/// `.cay`), otherwise a catalog name such as `Z6`, `D8` or `Z2xZ4`.
pub fn resolve_group(source: &str) -> Result<FiniteGroup, CliError> {
    let path = Path::new(source);
    if path.is_file() || source.ends_with(".cay") {
        return read_cay(path).map_err(|e| match e {
            CayError::Io(io) => CliError::Usage(format!("{source}: {io}")),
            e => CliError::Usage(format!("{source}: {e}")),
        });
    }
    by_name(source).map_err(|e| CliError::Usage(format!("{source}: {e}")))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn analyze(g: &FiniteGroup, limits: &Limits) -> Result<String, CliError> {
    if g.order() > limits.max_order {
        return Err(GroupError::TooLarge { order: g.order(), limit: limits.max_order }.into());
    }
    let aut = automorphism_group_with_budget(g, limits.aut_nodes)?;
    let mut out = String::new();
    let _ = writeln!(out, "group: {}", g.name());
    let _ = writeln!(out, "order: {}", g.order());
    let _ = writeln!(out, "abelian: {}", yes(g.is_abelian()));
    let _ = writeln!(out, "cyclic: {}", yes(g.is_cyclic()));
    let _ = writeln!(out, "|Aut|: {}", aut.len());
    let mut generators = Vec::new();
    let mut rows = Vec::new();
    for s in g.elements() {
        let r = definable_closure_in(&aut, &Subset::singleton(g.order(), s)?);
        if r.stabilizer_size == 1 {
            generators.push(s);
        }
        rows.push((g.element_name(s).to_string(), r.closure.len(), r.stabilizer_size));
    }
    let generators = Subset::new(g.order(), generators)?;
    let _ = writeln!(out, "logically cyclic: {}", yes(!generators.is_empty()));
    let _ = writeln!(out, "logical generators: {}", g.format_subset(&generators));
    let w = rows.iter().map(|r| r.0.len()).max().unwrap_or(1).max(7);
    let _ = writeln!(out, "{:<w$}  |def|  |stab|", "element");
    for (name, def, stab) in rows {
        let _ = writeln!(out, "{name:<w$}  {def:>5}  {stab:>6}");
    }
    Ok(out)
}

/// Automorphisms are listed individually up to this many.
pub const LIST_LIMIT: u128 = 1000;

pub fn aut(g: &FiniteGroup, limits: &Limits) -> Result<String, CliError> {
    let n = aut_order(g, limits)?;
    let mut out = String::new();
    let _ = writeln!(out, "|Aut({})| = {n}", g.name());
    if n <= LIST_LIMIT {
        let all = automorphism_group_with_budget(g, limits.aut_nodes)?;
        for a in all.iter() {
            let _ = writeln!(out, "{}", a.describe(g));
        }
    } else {
        let _ = writeln!(out, "(more than {LIST_LIMIT}; not listed)");
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaMode {
    Emit,
    Check,
}

fn element(g: &FiniteGroup, name: &str) -> Result<usize, CliError> {
    g.element_by_name(name).ok_or_else(|| CliError::Usage(format!("{} has no element {name:?}", g.name())))
}

pub fn formula(
    g: &FiniteGroup,
    params: &[String],
    target: &str,
    mode: FormulaMode,
    limits: &Limits,
) -> Result<String, CliError> {
    if g.order() > limits.formula_max_order {
        return Err(CliError::Budget(format!(
            "order {} exceeds the formula guard {}",
            g.order(),
            limits.formula_max_order
        )));
    }
    let params = params.iter().map(|p| element(g, p)).collect::<Result<Vec<_>, _>>()?;
    let s = Subset::new(g.order(), params)?;
    let target = element(g, target)?;
    let cf = cayley_formula(g, &s, target)?;
    let mut out = String::new();
    match mode {
        FormulaMode::Emit => {
            let _ = writeln!(out, "{}", print_formula(&cf.formula, Dialect::Multiplicative));
            for (name, &e) in &cf.params {
                let _ = writeln!(out, "where {name} = {}", g.element_name(e));
            }
        }
        FormulaMode::Check => {
            let ev = Evaluator::new(g).with_params(cf.params.clone()).with_budget(limits.eval_atoms);
            let sols = ev.solutions(&cf.formula, &cf.free_var)?;
            let defines = sols.len() == 1 && sols.contains(target);
            let _ = writeln!(out, "defines: {}", yes(defines));
            let _ = writeln!(out, "solutions: {}", g.format_subset(&sols));
        }
    }
    Ok(out)
}

pub fn smith(text: &str) -> Result<String, CliError> {
    let a = IntMatrix::parse(text).map_err(|e: MatrixError| CliError::Usage(e.to_string()))?;
    let s = snf(&a);
    verify_snf(&a, &s).map_err(CliError::Failed)?;
    let invariants: Vec<String> = s.invariants().iter().map(ToString::to_string).collect();
    Ok(format!(
        "invariants: {}\nrank: {}\nD =\n{}U =\n{}V =\n{}",
        invariants.join(" "),
        s.rank(),
        s.d,
        s.u,
        s.v
    ))
}
