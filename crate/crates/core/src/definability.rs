//! Definable closures and logical cyclicity of finite groups.
//!
//! For a finite group an element `g` is definable from parameters `S`
//! exactly when every automorphism fixing `S` pointwise also fixes `g`, so
//! `def_S(G)` is the fixed subgroup of the pointwise stabilizer of `S`.

use thiserror::Error;

use crate::aut::{self, AutError, AutGroup};
use crate::folang::{cayley_formula, EvalError, Evaluator};
use crate::group::{FiniteGroup, GroupError, Subset};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefinabilityError {
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("group of order {order} exceeds the formula evaluation guard {limit}")]
    FormulaGuard { order: usize, limit: usize },
}

#[derive(Debug, Clone)]
pub struct DefinabilityResult<'g> {
    pub group: &'g FiniteGroup,
    pub parameters: Subset,
    /// `def_S(G)`
    pub closure: Subset,
    /// `|C_Aut(G)(S)|`
    pub stabilizer_size: usize,
}

#[derive(Debug, Clone)]
pub struct LogicalCyclicityVerdict<'g> {
    pub group: &'g FiniteGroup,
    pub is_logically_cyclic: bool,
    /// Every element whose pointwise stabilizer is trivial.
    pub generators: Subset,
}

pub fn definable_closure<'g>(
    g: &'g FiniteGroup,
    s: &Subset,
    limits: &Limits,
) -> Result<DefinabilityResult<'g>, DefinabilityError> {
    check_scale(g, limits)?;
    let stabilizer = aut::fixing_automorphisms(g, s, limits.aut_nodes)?;
    Ok(closure_from_stabilizer(s, &stabilizer))
}

/// `def_S(G)` from an already enumerated `Aut(G)`.
pub fn definable_closure_in<'g>(aut_group: &AutGroup<'g>, s: &Subset) -> DefinabilityResult<'g> {
    let stabilizer = aut::pointwise_stabilizer(aut_group, s);
    closure_from_stabilizer(s, &stabilizer)
}

fn closure_from_stabilizer<'g>(s: &Subset, stabilizer: &AutGroup<'g>) -> DefinabilityResult<'g> {
    DefinabilityResult {
        group: stabilizer.group(),
        parameters: s.clone(),
        closure: aut::fixed_subgroup(stabilizer),
        stabilizer_size: stabilizer.len(),
    }
}

fn check_scale(g: &FiniteGroup, limits: &Limits) -> Result<(), DefinabilityError> {
    if g.order() > limits.max_order {
        return Err(GroupError::TooLarge { order: g.order(), limit: limits.max_order }.into());
    }
    Ok(())
}

/// Decides logical cyclicity and lists every logical generator, i.e. every
/// `s` fixed by no automorphism other than the identity.
pub fn is_logically_cyclic<'g>(
    g: &'g FiniteGroup,
    limits: &Limits,
) -> Result<LogicalCyclicityVerdict<'g>, DefinabilityError> {
    check_scale(g, limits)?;
    let mut generators = Vec::new();
    for s in g.elements() {
        let single = Subset::singleton(g.order(), s)?;
        if aut::nontrivial_fixing_automorphism(g, &single, limits.aut_nodes)?.is_none() {
            generators.push(s);
        }
    }
    let generators = Subset::new(g.order(), generators)?;
    Ok(LogicalCyclicityVerdict { group: g, is_logically_cyclic: !generators.is_empty(), generators })
}

/// Compares the automorphism criterion with the explicit Cayley-table
/// formula: returns true when `g ∈ def_S(G)` exactly when the formula
/// built for `(S, g)` has `{g}` as its solution set.
pub fn cross_check_definability(
    g: &FiniteGroup,
    s: &Subset,
    target: usize,
    limits: &Limits,
) -> Result<bool, DefinabilityError> {
    g.check_element(target)?;
    if g.order() > limits.formula_max_order {
        return Err(DefinabilityError::FormulaGuard { order: g.order(), limit: limits.formula_max_order });
    }
    let by_automorphisms = definable_closure(g, s, limits)?.closure.contains(target);
    let cayley = cayley_formula(g, s, target)?;
    let evaluator = Evaluator::new(g).with_params(cayley.params.clone()).with_budget(limits.eval_atoms);
    let by_formula = evaluator.check_defines(&cayley.formula, &cayley.free_var, target)?;
    Ok(by_automorphisms == by_formula)
}
