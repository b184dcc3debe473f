//! Model checking over a finite group.
//!
//! Formulas are compiled to a slot-indexed form first. Adjacent existential
//! quantifiers (and universal ones, read as `!exists !`) are merged into a
//! single block whose body is flattened into a list of conjuncts. A block is
//! solved by backtracking over its variables, where
//!
//! - a conjunct is checked as soon as all of its block variables are bound;
//! - a conjunct `v = t` with `t` already computable binds `v` without
//!   branching (unit propagation, in either orientation).
//!
//! The budget counts atom evaluations and branch points alike.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use super::ast::{Formula, Term};
use crate::group::{FiniteGroup, Subset};
use crate::limits::DEFAULT_EVAL_ATOMS;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable {0} is free but unbound")]
    UnboundVariable(String),
    #[error("parameter {0} is not bound to an element")]
    UnknownConstant(String),
    #[error("evaluation budget of {budget} steps exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("{name} is bound to {element}, outside a group of order {order}")]
    ElementOutOfRange { name: String, element: usize, order: usize },
}

#[derive(Debug, Clone)]
enum CTerm {
    Slot(usize),
    Const(usize),
    Product(Box<CTerm>, Box<CTerm>),
    Inverse(Box<CTerm>),
    Power(Box<CTerm>, i64),
}

impl CTerm {
    fn slots(&self, out: &mut Vec<usize>) {
        match self {
            CTerm::Slot(s) => out.push(*s),
            CTerm::Const(_) => {}
            CTerm::Product(a, b) => {
                a.slots(out);
                b.slots(out);
            }
            CTerm::Inverse(a) | CTerm::Power(a, _) => a.slots(out),
        }
    }

    fn mentions(&self, slot: usize) -> bool {
        let mut v = Vec::new();
        self.slots(&mut v);
        v.contains(&slot)
    }
}

#[derive(Debug, Clone)]
enum CFormula {
    Atom(CTerm, CTerm),
    Not(Box<CFormula>),
    And(Vec<CFormula>),
    Or(Vec<CFormula>),
    Block(Box<Block>),
}

impl CFormula {
    fn slots(&self, out: &mut Vec<usize>) {
        match self {
            CFormula::Atom(a, b) => {
                a.slots(out);
                b.slots(out);
            }
            CFormula::Not(x) => x.slots(out),
            CFormula::And(xs) | CFormula::Or(xs) => xs.iter().for_each(|x| x.slots(out)),
            CFormula::Block(b) => b.conjuncts.iter().for_each(|c| c.formula.slots(out)),
        }
    }
}

/// `exists vars (c_1 & ... & c_k)`
#[derive(Debug, Clone)]
struct Block {
    vars: Vec<usize>,
    conjuncts: Vec<Conjunct>,
    /// For each block variable, the conjuncts depending on it.
    occurrences: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
struct Conjunct {
    formula: CFormula,
    /// Block variables (as positions in `Block::vars`) the conjunct reads.
    deps: Vec<usize>,
    /// `(v, t)` when the conjunct is `v = t` or `t = v` and `t` avoids `v`.
    units: Vec<(usize, CTerm)>,
}

struct Compiler<'a> {
    params: &'a BTreeMap<String, usize>,
    order: usize,
    scope: Vec<(String, usize)>,
    free: BTreeMap<String, usize>,
    next_slot: usize,
}

impl Compiler<'_> {
    fn fresh(&mut self) -> usize {
        self.next_slot += 1;
        self.next_slot - 1
    }

    fn free_slot(&mut self, name: &str) -> usize {
        if let Some(&s) = self.free.get(name) {
            return s;
        }
        let s = self.fresh();
        self.free.insert(name.to_string(), s);
        s
    }

    fn term(&mut self, t: &Term) -> Result<CTerm, EvalError> {
        Ok(match t {
            Term::Var(v) => match self.scope.iter().rev().find(|(n, _)| n == v) {
                Some(&(_, s)) => CTerm::Slot(s),
                None => CTerm::Slot(self.free_slot(v)),
            },
            Term::Param(p) => {
                let &e = self.params.get(p).ok_or_else(|| EvalError::UnknownConstant(p.clone()))?;
                if e >= self.order {
                    return Err(EvalError::ElementOutOfRange { name: p.clone(), element: e, order: self.order });
                }
                CTerm::Const(e)
            }
            Term::Identity => CTerm::Const(0),
            Term::Product(a, b) => CTerm::Product(Box::new(self.term(a)?), Box::new(self.term(b)?)),
            Term::Inverse(a) => CTerm::Inverse(Box::new(self.term(a)?)),
            Term::Power(a, k) => CTerm::Power(Box::new(self.term(a)?), *k),
        })
    }

    fn formula(&mut self, f: &Formula) -> Result<CFormula, EvalError> {
        Ok(match f {
            Formula::Eq(a, b) => CFormula::Atom(self.term(a)?, self.term(b)?),
            Formula::Not(x) => CFormula::Not(Box::new(self.formula(x)?)),
            Formula::And(xs) => CFormula::And(xs.iter().map(|x| self.formula(x)).collect::<Result<_, _>>()?),
            Formula::Or(xs) => CFormula::Or(xs.iter().map(|x| self.formula(x)).collect::<Result<_, _>>()?),
            Formula::Implies(a, b) => {
                CFormula::Or(vec![CFormula::Not(Box::new(self.formula(a)?)), self.formula(b)?])
            }
            Formula::Exists(vs, body) => CFormula::Block(Box::new(self.block(vs, body, true)?)),
            Formula::ForAll(vs, body) => {
                CFormula::Not(Box::new(CFormula::Block(Box::new(self.block(vs, body, false)?))))
            }
        })
    }

    /// `exists vs body` when `positive`, else `exists vs !body`.
    fn block(&mut self, vs: &[String], body: &Formula, positive: bool) -> Result<Block, EvalError> {
        let depth = self.scope.len();
        let mut vars = Vec::new();
        self.bind(vs, &mut vars);
        let mut formulas = Vec::new();
        self.flatten(body, positive, &mut vars, &mut formulas)?;
        self.scope.truncate(depth);

        let local: HashMap<usize, usize> = vars.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut occurrences = vec![Vec::new(); vars.len()];
        let mut conjuncts = Vec::with_capacity(formulas.len());
        for (c, formula) in formulas.into_iter().enumerate() {
            let mut slots = Vec::new();
            formula.slots(&mut slots);
            let mut deps: Vec<usize> = slots.iter().filter_map(|s| local.get(s).copied()).collect();
            deps.sort_unstable();
            deps.dedup();
            for &d in &deps {
                occurrences[d].push(c);
            }
            let mut units = Vec::new();
            if let CFormula::Atom(l, r) = &formula {
                for (side, other) in [(l, r), (r, l)] {
                    if let CTerm::Slot(s) = side {
                        if let Some(&v) = local.get(s) {
                            if !other.mentions(*s) {
                                units.push((v, other.clone()));
                            }
                        }
                    }
                }
            }
            conjuncts.push(Conjunct { formula, deps, units });
        }
        Ok(Block { vars, conjuncts, occurrences })
    }

    fn bind(&mut self, vs: &[String], vars: &mut Vec<usize>) {
        for v in vs {
            let s = self.fresh();
            self.scope.push((v.clone(), s));
            vars.push(s);
        }
    }

    /// Appends the conjuncts of `f` (or of `!f`) to `out`, pulling nested
    /// existential quantifiers into the enclosing block.
    fn flatten(
        &mut self,
        f: &Formula,
        positive: bool,
        vars: &mut Vec<usize>,
        out: &mut Vec<CFormula>,
    ) -> Result<(), EvalError> {
        match (f, positive) {
            (Formula::And(xs), true) | (Formula::Or(xs), false) => {
                for x in xs {
                    self.flatten(x, positive, vars, out)?;
                }
            }
            (Formula::Implies(a, b), false) => {
                self.flatten(a, true, vars, out)?;
                self.flatten(b, false, vars, out)?;
            }
            (Formula::Not(x), _) => self.flatten(x, !positive, vars, out)?,
            (Formula::Exists(vs, body), true) | (Formula::ForAll(vs, body), false) => {
                let depth = self.scope.len();
                self.bind(vs, vars);
                self.flatten(body, positive, vars, out)?;
                self.scope.truncate(depth);
            }
            _ => {
                let c = self.formula(f)?;
                out.push(if positive { c } else { CFormula::Not(Box::new(c)) });
            }
        }
        Ok(())
    }
}

struct Compiled {
    formula: CFormula,
    free: BTreeMap<String, usize>,
    slots: usize,
}

struct Run<'g> {
    group: &'g FiniteGroup,
    env: Vec<Option<usize>>,
    budget: u64,
    used: u64,
}

struct BlockState {
    remaining: Vec<usize>,
    trail: Vec<usize>,
}

impl Run<'_> {
    fn tick(&mut self) -> Result<(), EvalError> {
        self.used += 1;
        if self.used > self.budget {
            return Err(EvalError::BudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    fn term(&self, t: &CTerm) -> usize {
        let g = self.group;
        match t {
            CTerm::Slot(s) => self.env[*s].expect("slot is bound before use"),
            CTerm::Const(e) => *e,
            CTerm::Product(a, b) => g.mul(self.term(a), self.term(b)),
            CTerm::Inverse(a) => g.inv(self.term(a)),
            CTerm::Power(a, k) => g.pow(self.term(a), *k),
        }
    }

    fn formula(&mut self, f: &CFormula) -> Result<bool, EvalError> {
        match f {
            CFormula::Atom(a, b) => {
                self.tick()?;
                Ok(self.term(a) == self.term(b))
            }
            CFormula::Not(x) => Ok(!self.formula(x)?),
            CFormula::And(xs) => {
                for x in xs {
                    if !self.formula(x)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            CFormula::Or(xs) => {
                for x in xs {
                    if self.formula(x)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            CFormula::Block(b) => self.block(b),
        }
    }

    fn block(&mut self, b: &Block) -> Result<bool, EvalError> {
        let mut st = BlockState {
            remaining: b.conjuncts.iter().map(|c| c.deps.len()).collect(),
            trail: Vec::new(),
        };
        let checks: Vec<usize> = (0..b.conjuncts.len()).filter(|&c| st.remaining[c] == 0).collect();
        let units: Vec<usize> =
            (0..b.conjuncts.len()).filter(|&c| st.remaining[c] == 1 && !b.conjuncts[c].units.is_empty()).collect();
        let found = self.settle(b, &mut st, checks, units)? && self.branch(b, &mut st)?;
        self.undo(b, &mut st, 0);
        Ok(found)
    }

    fn assign(&mut self, b: &Block, st: &mut BlockState, v: usize, value: usize, checks: &mut Vec<usize>, units: &mut Vec<usize>) {
        self.env[b.vars[v]] = Some(value);
        st.trail.push(v);
        for &c in &b.occurrences[v] {
            st.remaining[c] -= 1;
            match st.remaining[c] {
                0 => checks.push(c),
                1 if !b.conjuncts[c].units.is_empty() => units.push(c),
                _ => {}
            }
        }
    }

    fn undo(&mut self, b: &Block, st: &mut BlockState, len: usize) {
        while st.trail.len() > len {
            let v = st.trail.pop().expect("trail longer than len");
            self.env[b.vars[v]] = None;
            for &c in &b.occurrences[v] {
                st.remaining[c] += 1;
            }
        }
    }

    /// Checks completed conjuncts and propagates unit equations until
    /// nothing changes; false on a violated conjunct.
    fn settle(
        &mut self,
        b: &Block,
        st: &mut BlockState,
        mut checks: Vec<usize>,
        mut units: Vec<usize>,
    ) -> Result<bool, EvalError> {
        loop {
            if let Some(c) = checks.pop() {
                if !self.formula(&b.conjuncts[c].formula)? {
                    return Ok(false);
                }
            } else if let Some(c) = units.pop() {
                if st.remaining[c] != 1 {
                    continue;
                }
                let Some((v, t)) = b.conjuncts[c].units.iter().find(|(v, _)| self.env[b.vars[*v]].is_none()) else {
                    continue;
                };
                self.tick()?;
                let value = self.term(t);
                self.assign(b, st, *v, value, &mut checks, &mut units);
            } else {
                return Ok(true);
            }
        }
    }

    fn branch(&mut self, b: &Block, st: &mut BlockState) -> Result<bool, EvalError> {
        let Some(v) = (0..b.vars.len()).find(|&v| self.env[b.vars[v]].is_none()) else {
            return Ok(true);
        };
        for value in self.group.elements() {
            self.tick()?;
            let mark = st.trail.len();
            let (mut checks, mut units) = (Vec::new(), Vec::new());
            self.assign(b, st, v, value, &mut checks, &mut units);
            if self.settle(b, st, checks, units)? && self.branch(b, st)? {
                return Ok(true);
            }
            self.undo(b, st, mark);
        }
        Ok(false)
    }
}

/// Evaluates formulas over one group with a fixed parameter binding.
///
/// Each call gets a fresh budget, so an evaluator may be shared between
/// threads.
#[derive(Debug, Clone)]
pub struct Evaluator<'g> {
    group: &'g FiniteGroup,
    params: BTreeMap<String, usize>,
    budget: u64,
}

impl<'g> Evaluator<'g> {
    pub fn new(group: &'g FiniteGroup) -> Self {
        Evaluator { group, params: BTreeMap::new(), budget: DEFAULT_EVAL_ATOMS }
    }

    pub fn with_params(mut self, params: BTreeMap<String, usize>) -> Self {
        self.params = params;
        self
    }

    pub fn with_param(mut self, name: impl Into<String>, element: usize) -> Self {
        self.params.insert(name.into(), element);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    fn compile(&self, f: &Formula, extra_free: Option<&str>) -> Result<Compiled, EvalError> {
        let mut c = Compiler {
            params: &self.params,
            order: self.group.order(),
            scope: Vec::new(),
            free: BTreeMap::new(),
            next_slot: 0,
        };
        if let Some(name) = extra_free {
            c.free_slot(name);
        }
        let formula = c.formula(f)?;
        Ok(Compiled { formula, free: c.free, slots: c.next_slot })
    }

    fn run(&self, compiled: &Compiled, env: &BTreeMap<String, usize>) -> Result<Run<'g>, EvalError> {
        let mut slots = vec![None; compiled.slots];
        for (name, &slot) in &compiled.free {
            let &e = env.get(name).ok_or_else(|| EvalError::UnboundVariable(name.clone()))?;
            if e >= self.group.order() {
                return Err(EvalError::ElementOutOfRange { name: name.clone(), element: e, order: self.group.order() });
            }
            slots[slot] = Some(e);
        }
        Ok(Run { group: self.group, env: slots, budget: self.budget, used: 0 })
    }

    /// Truth of `f` with its free variables bound by `env`.
    pub fn evaluate(&self, f: &Formula, env: &BTreeMap<String, usize>) -> Result<bool, EvalError> {
        let compiled = self.compile(f, None)?;
        let mut run = self.run(&compiled, env)?;
        run.formula(&compiled.formula)
    }

    /// `{x in G : G |= f(x)}` for the single free variable `x`.
    pub fn solutions(&self, f: &Formula, free_var: &str) -> Result<Subset, EvalError> {
        let mut found = Vec::new();
        self.scan(f, free_var, |x, holds| {
            if holds {
                found.push(x);
            }
            true
        })?;
        Ok(Subset::new(self.group.order(), found).expect("elements of the group"))
    }

    /// Whether the solution set of `f` in `free_var` is exactly `{target}`.
    pub fn check_defines(&self, f: &Formula, free_var: &str, target: usize) -> Result<bool, EvalError> {
        if target >= self.group.order() {
            return Err(EvalError::ElementOutOfRange {
                name: free_var.to_string(),
                element: target,
                order: self.group.order(),
            });
        }
        let mut defines = true;
        let order = std::iter::once(target).chain(self.group.elements().filter(|&x| x != target));
        self.scan_in(f, free_var, order, |x, holds| {
            defines = holds == (x == target);
            defines
        })?;
        Ok(defines)
    }

    fn scan(&self, f: &Formula, free_var: &str, visit: impl FnMut(usize, bool) -> bool) -> Result<(), EvalError> {
        self.scan_in(f, free_var, self.group.elements(), visit)
    }

    /// Evaluates `f` at each candidate for `free_var` until `visit` says stop.
    /// The budget is shared by all candidates.
    fn scan_in(
        &self,
        f: &Formula,
        free_var: &str,
        candidates: impl Iterator<Item = usize>,
        mut visit: impl FnMut(usize, bool) -> bool,
    ) -> Result<(), EvalError> {
        let compiled = self.compile(f, Some(free_var))?;
        if let Some(other) = compiled.free.keys().find(|k| *k != free_var) {
            return Err(EvalError::UnboundVariable(other.clone()));
        }
        let slot = compiled.free[free_var];
        let mut run = Run { group: self.group, env: vec![None; compiled.slots], budget: self.budget, used: 0 };
        for x in candidates {
            run.env[slot] = Some(x);
            let holds = run.formula(&compiled.formula)?;
            if !visit(x, holds) {
                break;
            }
        }
        Ok(())
    }
}
