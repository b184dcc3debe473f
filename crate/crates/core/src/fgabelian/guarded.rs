//! Exact evaluation of guarded formulas over infinite abelian groups.
//!
//! Every quantifier must come with a guard: `forall y (g -> p)` or
//! `exists y (g & p)`, where the conjuncts of `g` that mention only `y`
//! (besides already bound names) pin `y` down to finitely many values.
//! Those conjuncts are linear, `k y = c`, and are solved coordinatewise:
//! exactly over `Z` and `Q`, as congruences (via Smith normal form) on
//! torsion coordinates.
//!
//! Solution sets of a formula in its free variable `x` are found without
//! enumerating the ambient group. Once quantifiers are expanded over their
//! finitely many guard solutions, every atom is either independent of `x`
//! or has finitely many solutions in `x`. Collect the latter into `C`; off
//! `C` every such atom is false, so the formula has a single truth value
//! there. If that value is true the solution set is infinite, otherwise it
//! is the part of `C` where the formula holds.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use super::endo::{FgAbelian, FgElement, FgError};
use super::rational::RationalElement;
use super::snf::solve_congruences;
use crate::folang::{print_formula, Dialect, Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuardError {
    #[error("guard is not a conjunction of equations and negated equations: {0}")]
    NonlinearGuard(String),
    #[error("quantifier without a finite guard: {0}")]
    UnguardedQuantifier(String),
    #[error("guard depends on the free variable: {0}")]
    Undetermined(String),
    #[error("variable {0} is free but unbound")]
    UnboundVariable(String),
    #[error("parameter {0} is not bound to an element")]
    UnknownConstant(String),
    #[error(transparent)]
    Shape(#[from] FgError),
}

/// The groups guarded evaluation runs over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ambient {
    Fg(FgAbelian),
    Rationals,
    RationalsTimesZ2,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AmbientElement {
    Fg(FgElement),
    Rational(RationalElement),
    /// `(q, v mod 2)`
    RationalZ2(RationalElement, u64),
}

impl From<FgElement> for AmbientElement {
    fn from(x: FgElement) -> Self {
        AmbientElement::Fg(x)
    }
}

impl From<RationalElement> for AmbientElement {
    fn from(q: RationalElement) -> Self {
        AmbientElement::Rational(q)
    }
}

impl fmt::Display for AmbientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmbientElement::Fg(x) => write!(f, "{x}"),
            AmbientElement::Rational(q) => write!(f, "{q}"),
            AmbientElement::RationalZ2(q, v) => write!(f, "({q}, {v} mod 2)"),
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Fg(g) => write!(f, "{g}"),
            Ambient::Rationals => f.write_str("Q"),
            Ambient::RationalsTimesZ2 => f.write_str("QxZ2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GuardSolutions {
    Finite(Vec<AmbientElement>),
    Infinite,
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    Integer,
    Rational,
    Residue(u64),
}

type Coords = Vec<BigRational>;

enum CoordSolutions {
    Finite(Vec<Coords>),
    Infinite,
}

fn int(q: &BigRational) -> BigInt {
    debug_assert!(q.is_integer());
    q.to_integer()
}

impl Ambient {
    fn kinds(&self) -> Vec<Kind> {
        match self {
            Ambient::Fg(g) => {
                let mut k = vec![Kind::Integer; g.free_rank()];
                k.extend(g.torsion().iter().map(|&m| Kind::Residue(m)));
                k
            }
            Ambient::Rationals => vec![Kind::Rational],
            Ambient::RationalsTimesZ2 => vec![Kind::Rational, Kind::Residue(2)],
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ambient::Fg(g) if g.is_finite())
    }

    pub fn zero(&self) -> AmbientElement {
        self.element(&vec![BigRational::zero(); self.kinds().len()])
    }

    /// Every element, when the group is finite.
    pub fn elements(&self) -> Option<Vec<AmbientElement>> {
        if !self.is_finite() {
            return None;
        }
        let mut all: Vec<Coords> = vec![Vec::new()];
        for kind in self.kinds() {
            let Kind::Residue(m) = kind else { unreachable!("finite groups have only torsion") };
            all = all
                .into_iter()
                .flat_map(|c| {
                    (0..m).map(move |v| {
                        let mut c = c.clone();
                        c.push(BigRational::from_integer(v.into()));
                        c
                    })
                })
                .collect();
        }
        Some(all.iter().map(|c| self.element(c)).collect())
    }

    fn coords(&self, e: &AmbientElement) -> Result<Coords, GuardError> {
        let mismatch = || GuardError::Shape(FgError::ShapeMismatch(format!("{e} is not an element of {self}")));
        let r = |x: &BigInt| BigRational::from_integer(x.clone());
        match (self, e) {
            (Ambient::Fg(g), AmbientElement::Fg(x)) => {
                if x.free().len() != g.free_rank() || x.moduli() != g.torsion() {
                    return Err(mismatch());
                }
                let mut c: Coords = x.free().iter().map(r).collect();
                c.extend(x.torsion().iter().map(|&v| BigRational::from_integer(v.into())));
                Ok(c)
            }
            (Ambient::Rationals, AmbientElement::Rational(q)) => Ok(vec![q.value().clone()]),
            (Ambient::RationalsTimesZ2, AmbientElement::RationalZ2(q, v)) if *v < 2 => {
                Ok(vec![q.value().clone(), BigRational::from_integer((*v).into())])
            }
            _ => Err(mismatch()),
        }
    }

    fn element(&self, c: &Coords) -> AmbientElement {
        match self {
            Ambient::Fg(g) => {
                let r = g.free_rank();
                let free = c[..r].iter().map(int).collect();
                let torsion = c[r..].iter().map(int).collect();
                AmbientElement::Fg(g.element(free, torsion).expect("coordinates match the shape"))
            }
            Ambient::Rationals => AmbientElement::Rational(c[0].clone().into()),
            Ambient::RationalsTimesZ2 => {
                AmbientElement::RationalZ2(c[0].clone().into(), int(&c[1]).to_u64().expect("residue mod 2"))
            }
        }
    }

    fn reduce(&self, mut c: Coords) -> Coords {
        for (x, kind) in c.iter_mut().zip(self.kinds()) {
            if let Kind::Residue(m) = kind {
                *x = BigRational::from_integer(int(x).mod_floor(&BigInt::from(m)));
            }
        }
        c
    }

    fn add(&self, a: &Coords, b: &Coords) -> Coords {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    fn scale(&self, a: &Coords, k: &BigInt) -> Coords {
        let k = BigRational::from_integer(k.clone());
        self.reduce(a.iter().map(|x| x * &k).collect())
    }

    /// Elements `y` with `k y = c` for every `(k, c)`.
    fn solve(&self, eqs: &[(BigInt, Coords)]) -> CoordSolutions {
        let mut per_coord: Vec<Option<Vec<BigRational>>> = Vec::new();
        let mut empty = false;
        for (i, kind) in self.kinds().into_iter().enumerate() {
            match kind {
                Kind::Integer | Kind::Rational => {
                    let mut value: Option<BigRational> = None;
                    for (k, c) in eqs {
                        if k.is_zero() {
                            empty |= !c[i].is_zero();
                            continue;
                        }
                        let q = &c[i] / BigRational::from_integer(k.clone());
                        if matches!(kind, Kind::Integer) && !q.is_integer() {
                            empty = true;
                        }
                        if value.as_ref().is_some_and(|v| *v != q) {
                            empty = true;
                        }
                        value = Some(q);
                    }
                    per_coord.push(value.map(|v| vec![v]));
                }
                Kind::Residue(m) => {
                    let congruences: Vec<(BigInt, BigInt)> = eqs.iter().map(|(k, c)| (k.clone(), int(&c[i]))).collect();
                    let residues = solve_congruences(&congruences, &BigInt::from(m));
                    empty |= residues.is_empty();
                    per_coord.push(Some(residues.into_iter().map(BigRational::from_integer).collect()));
                }
            }
        }
        if empty {
            return CoordSolutions::Finite(Vec::new());
        }
        let mut all: Vec<Coords> = vec![Vec::new()];
        for options in per_coord {
            let Some(options) = options else {
                return CoordSolutions::Infinite;
            };
            all = all
                .into_iter()
                .flat_map(|c| {
                    options.iter().map(move |o| {
                        let mut c = c.clone();
                        c.push(o.clone());
                        c
                    })
                })
                .collect();
        }
        CoordSolutions::Finite(all)
    }
}

#[derive(Debug, Clone)]
enum Binding {
    Known(Coords),
    /// The free variable whose solution set is being determined.
    Unknown,
}

type Env = Vec<(String, Binding)>;

/// `sum_v coeffs[v] * v + constant`
struct Lin {
    coeffs: BTreeMap<String, BigInt>,
    constant: Coords,
}

struct Block<'f> {
    forall: bool,
    vars: Vec<&'f str>,
    guards: Vec<&'f Formula>,
    consequent: Option<&'f Formula>,
}

fn conjuncts<'f>(f: &'f Formula, out: &mut Vec<&'f Formula>) {
    match f {
        Formula::And(xs) => xs.iter().for_each(|x| conjuncts(x, out)),
        _ => out.push(f),
    }
}

fn block(f: &Formula) -> Option<Block<'_>> {
    let (forall, mut vars, mut body) = match f {
        Formula::ForAll(vs, b) => (true, vs.iter().map(String::as_str).collect::<Vec<_>>(), &**b),
        Formula::Exists(vs, b) => (false, vs.iter().map(String::as_str).collect(), &**b),
        _ => return None,
    };
    while let (true, Formula::ForAll(vs, b)) | (false, Formula::Exists(vs, b)) = (forall, body) {
        vars.extend(vs.iter().map(String::as_str));
        body = b;
    }
    let mut guards = Vec::new();
    let consequent = match (forall, body) {
        (true, Formula::Implies(g, c)) => {
            conjuncts(g, &mut guards);
            Some(&**c)
        }
        (true, other) => Some(other),
        (false, other) => {
            conjuncts(other, &mut guards);
            None
        }
    };
    Some(Block { forall, vars, guards, consequent })
}

fn as_literal(f: &Formula) -> Option<(&Term, &Term, bool)> {
    match f {
        Formula::Eq(a, b) => Some((a, b, true)),
        Formula::Not(x) => match &**x {
            Formula::Eq(a, b) => Some((a, b, false)),
            _ => None,
        },
        _ => None,
    }
}

/// Evaluates guarded formulas over one ambient group with fixed parameters.
#[derive(Debug, Clone)]
pub struct GuardedEvaluator<'a> {
    ambient: &'a Ambient,
    params: BTreeMap<String, AmbientElement>,
}

impl<'a> GuardedEvaluator<'a> {
    pub fn new(ambient: &'a Ambient) -> Self {
        GuardedEvaluator { ambient, params: BTreeMap::new() }
    }

    pub fn with_param(mut self, name: impl Into<String>, value: AmbientElement) -> Self {
        self.params.insert(name.into(), value);
        self
    }

    fn env_from(&self, env: &BTreeMap<String, AmbientElement>) -> Result<Env, GuardError> {
        env.iter().map(|(k, v)| Ok((k.clone(), Binding::Known(self.ambient.coords(v)?)))).collect()
    }

    fn lin(&self, t: &Term, env: &Env) -> Result<Lin, GuardError> {
        let amb = self.ambient;
        Ok(match t {
            Term::Var(v) => match env.iter().rev().find(|(n, _)| n == v) {
                Some((_, Binding::Known(c))) => Lin { coeffs: BTreeMap::new(), constant: c.clone() },
                Some((_, Binding::Unknown)) => Lin {
                    coeffs: BTreeMap::from([(v.clone(), BigInt::one())]),
                    constant: amb.coords(&amb.zero())?,
                },
                None => return Err(GuardError::UnboundVariable(v.clone())),
            },
            Term::Param(p) => {
                let e = self.params.get(p).ok_or_else(|| GuardError::UnknownConstant(p.clone()))?;
                Lin { coeffs: BTreeMap::new(), constant: amb.coords(e)? }
            }
            Term::Identity => Lin { coeffs: BTreeMap::new(), constant: amb.coords(&amb.zero())? },
            Term::Product(a, b) => {
                let (a, b) = (self.lin(a, env)?, self.lin(b, env)?);
                let mut coeffs = a.coeffs;
                for (v, k) in b.coeffs {
                    *coeffs.entry(v).or_default() += k;
                }
                Lin { coeffs, constant: amb.add(&a.constant, &b.constant) }
            }
            Term::Inverse(a) => self.scaled(self.lin(a, env)?, &BigInt::from(-1)),
            Term::Power(a, k) => self.scaled(self.lin(a, env)?, &BigInt::from(*k)),
        })
    }

    fn scaled(&self, l: Lin, k: &BigInt) -> Lin {
        Lin {
            coeffs: l.coeffs.into_iter().map(|(v, c)| (v, c * k)).collect(),
            constant: self.ambient.scale(&l.constant, k),
        }
    }

    /// `a - b` with zero coefficients dropped.
    fn difference(&self, a: &Term, b: &Term, env: &Env) -> Result<Lin, GuardError> {
        let mut d = self.lin(a, env)?;
        let nb = self.scaled(self.lin(b, env)?, &BigInt::from(-1));
        for (v, k) in nb.coeffs {
            *d.coeffs.entry(v).or_default() += k;
        }
        d.coeffs.retain(|_, k| !k.is_zero());
        d.constant = self.ambient.add(&d.constant, &nb.constant);
        Ok(d)
    }

    /// Truth value; an atom that still depends on the unknown free variable
    /// counts as false (the value everywhere off its finite solution set).
    fn eval(&self, f: &Formula, env: &mut Env) -> Result<bool, GuardError> {
        match f {
            Formula::Eq(a, b) => {
                let d = self.difference(a, b, env)?;
                Ok(d.coeffs.is_empty() && d.constant.iter().all(Zero::is_zero))
            }
            Formula::Not(x) => Ok(!self.eval(x, env)?),
            Formula::And(xs) => {
                for x in xs {
                    if !self.eval(x, env)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Or(xs) => {
                for x in xs {
                    if self.eval(x, env)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Formula::Implies(a, b) => Ok(!self.eval(a, env)? || self.eval(b, env)?),
            Formula::Exists(..) | Formula::ForAll(..) => {
                let b = block(f).expect("quantifier");
                let assignments = self.assignments(f, &b, env)?;
                for values in assignments {
                    let depth = env.len();
                    env.extend(b.vars.iter().zip(values).map(|(v, c)| (v.to_string(), Binding::Known(c))));
                    let mut guards_hold = true;
                    for g in &b.guards {
                        if !self.eval(g, env)? {
                            guards_hold = false;
                            break;
                        }
                    }
                    let verdict = match (b.forall, guards_hold) {
                        (true, true) => Some(self.eval(b.consequent.expect("forall body"), env)?).filter(|ok| !ok),
                        (false, true) => Some(true),
                        (_, false) => None,
                    };
                    env.truncate(depth);
                    if let Some(v) = verdict {
                        return Ok(v);
                    }
                }
                Ok(b.forall)
            }
        }
    }

    /// The candidate tuples for a block's variables, from the guard
    /// conjuncts that constrain one variable each.
    fn assignments(&self, f: &Formula, b: &Block<'_>, env: &mut Env) -> Result<Vec<Vec<Coords>>, GuardError> {
        let mut tuples: Vec<Vec<Coords>> = vec![Vec::new()];
        for (i, &var) in b.vars.iter().enumerate() {
            let mut eqs = Vec::new();
            let mut depends_on_unknown = false;
            let mut contradiction = false;
            for g in &b.guards {
                let Some((lhs, rhs, positive)) = as_literal(g) else { continue };
                if g.free_vars().iter().any(|v| v.as_str() != var && b.vars.contains(&v.as_str())) {
                    continue;
                }
                env.push((var.to_string(), Binding::Unknown));
                let d = self.difference(lhs, rhs, env);
                env.pop();
                let d = d?;
                if d.coeffs.keys().any(|v| v.as_str() != var) {
                    depends_on_unknown = true;
                    continue;
                }
                if !positive && d.coeffs.is_empty() && d.constant.iter().all(Zero::is_zero) {
                    contradiction = true;
                }
                if positive {
                    let k = d.coeffs.get(var).cloned().unwrap_or_default();
                    eqs.push((k, self.ambient.scale(&d.constant, &BigInt::from(-1))));
                }
            }
            // a variable shadowed later in the block takes the later binding
            if b.vars[i + 1..].contains(&var) {
                eqs.clear();
            }
            let options = match self.ambient.solve(&eqs) {
                _ if contradiction => Vec::new(),
                CoordSolutions::Finite(v) => v,
                CoordSolutions::Infinite if depends_on_unknown => {
                    return Err(GuardError::Undetermined(print_formula(f, Dialect::Additive)))
                }
                CoordSolutions::Infinite => {
                    return Err(GuardError::UnguardedQuantifier(print_formula(f, Dialect::Additive)))
                }
            };
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    options.iter().map(move |o| {
                        let mut t = t.clone();
                        t.push(o.clone());
                        t
                    })
                })
                .collect();
        }
        Ok(tuples)
    }

    /// Adds to `out` every value of the unknown variable making some atom of
    /// `f` (under some guard assignment) true.
    fn collect(&self, f: &Formula, env: &mut Env, out: &mut BTreeSet<Coords>) -> Result<(), GuardError> {
        match f {
            Formula::Eq(a, b) => {
                let d = self.difference(a, b, env)?;
                if let Some((_, k)) = d.coeffs.iter().next() {
                    debug_assert_eq!(d.coeffs.len(), 1, "a single unknown");
                    let c = self.ambient.scale(&d.constant, &BigInt::from(-1));
                    match self.ambient.solve(&[(k.clone(), c)]) {
                        CoordSolutions::Finite(v) => out.extend(v),
                        CoordSolutions::Infinite => unreachable!("nonzero coefficient"),
                    }
                }
                Ok(())
            }
            Formula::Not(x) => self.collect(x, env, out),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().try_for_each(|x| self.collect(x, env, out)),
            Formula::Implies(a, b) => {
                self.collect(a, env, out)?;
                self.collect(b, env, out)
            }
            Formula::Exists(..) | Formula::ForAll(..) => {
                let b = block(f).expect("quantifier");
                for values in self.assignments(f, &b, env)? {
                    let depth = env.len();
                    env.extend(b.vars.iter().zip(values).map(|(v, c)| (v.to_string(), Binding::Known(c))));
                    for g in &b.guards {
                        self.collect(g, env, out)?;
                    }
                    if let Some(c) = b.consequent {
                        self.collect(c, env, out)?;
                    }
                    env.truncate(depth);
                }
                Ok(())
            }
        }
    }

    pub fn evaluate(&self, f: &Formula, env: &BTreeMap<String, AmbientElement>) -> Result<bool, GuardError> {
        let mut env = self.env_from(env)?;
        self.eval(f, &mut env)
    }

    /// The exact solution set of `f` in `free_var`.
    pub fn solutions(&self, f: &Formula, free_var: &str) -> Result<GuardSolutions, GuardError> {
        if let Some(other) = f.free_vars().into_iter().find(|v| v.as_str() != free_var) {
            return Err(GuardError::UnboundVariable(other));
        }
        let holds_at = |c: &Coords| {
            let mut env = vec![(free_var.to_string(), Binding::Known(c.clone()))];
            self.eval(f, &mut env)
        };
        if let Some(all) = self.ambient.elements() {
            let mut found = Vec::new();
            for e in all {
                if holds_at(&self.ambient.coords(&e)?)? {
                    found.push(e);
                }
            }
            return Ok(GuardSolutions::Finite(found));
        }
        let mut env = vec![(free_var.to_string(), Binding::Unknown)];
        if self.eval(f, &mut env)? {
            return Ok(GuardSolutions::Infinite);
        }
        let mut candidates = BTreeSet::new();
        self.collect(f, &mut env, &mut candidates)?;
        let mut found = Vec::new();
        for c in candidates {
            if holds_at(&c)? {
                found.push(self.ambient.element(&c));
            }
        }
        found.sort();
        Ok(GuardSolutions::Finite(found))
    }

    pub fn check_defines(&self, f: &Formula, free_var: &str, target: &AmbientElement) -> Result<bool, GuardError> {
        self.ambient.coords(target)?;
        Ok(self.solutions(f, free_var)? == GuardSolutions::Finite(vec![target.clone()]))
    }

    /// Solutions in `var` of a conjunction of (negated) linear equations,
    /// other variables taken from `env`.
    pub fn guard_solutions(
        &self,
        guard: &Formula,
        var: &str,
        env: &BTreeMap<String, AmbientElement>,
    ) -> Result<GuardSolutions, GuardError> {
        let mut parts = Vec::new();
        conjuncts(guard, &mut parts);
        if let Some(bad) = parts.iter().find(|p| as_literal(p).is_none()) {
            return Err(GuardError::NonlinearGuard(print_formula(bad, Dialect::Additive)));
        }
        let mut env = self.env_from(env)?;
        let b = Block { forall: false, vars: vec![var], guards: parts, consequent: None };
        let quantified = Formula::exists([var], guard.clone());
        let assignments = match self.assignments(&quantified, &b, &mut env) {
            Ok(a) => a,
            Err(GuardError::UnguardedQuantifier(_)) => return Ok(GuardSolutions::Infinite),
            Err(e) => return Err(e),
        };
        let mut found = Vec::new();
        for mut values in assignments {
            let c = values.pop().expect("one variable");
            env.push((var.to_string(), Binding::Known(c.clone())));
            let holds = self.eval(guard, &mut env);
            env.pop();
            if holds? {
                found.push(self.ambient.element(&c));
            }
        }
        found.sort();
        Ok(GuardSolutions::Finite(found))
    }
}

pub fn guard_solutions(
    ambient: &Ambient,
    params: &BTreeMap<String, AmbientElement>,
    guard: &Formula,
    var: &str,
) -> Result<GuardSolutions, GuardError> {
    evaluator(ambient, params).guard_solutions(guard, var, &BTreeMap::new())
}

pub fn evaluate_guarded(
    ambient: &Ambient,
    params: &BTreeMap<String, AmbientElement>,
    f: &Formula,
    env: &BTreeMap<String, AmbientElement>,
) -> Result<bool, GuardError> {
    evaluator(ambient, params).evaluate(f, env)
}

pub fn check_defines_guarded(
    ambient: &Ambient,
    params: &BTreeMap<String, AmbientElement>,
    f: &Formula,
    free_var: &str,
    target: &AmbientElement,
) -> Result<bool, GuardError> {
    evaluator(ambient, params).check_defines(f, free_var, target)
}

fn evaluator<'a>(ambient: &'a Ambient, params: &BTreeMap<String, AmbientElement>) -> GuardedEvaluator<'a> {
    GuardedEvaluator { ambient, params: params.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folang::parse_formula;

    fn additive(text: &str) -> Formula {
        parse_formula(text, Dialect::Additive, &["s"]).unwrap()
    }

    fn zz2() -> Ambient {
        Ambient::Fg(FgAbelian::z_times_zm(2).unwrap())
    }

    fn pair(m: u64, u: i64, v: i64) -> AmbientElement {
        FgElement::pair(m, u, v).unwrap().into()
    }

    fn q(n: i64, d: i64) -> AmbientElement {
        RationalElement::new(n, d).unwrap().into()
    }

    fn qz2(n: i64, d: i64, v: u64) -> AmbientElement {
        AmbientElement::RationalZ2(RationalElement::new(n, d).unwrap(), v)
    }

    #[test]
    fn guard_examples() {
        let none = BTreeMap::new();
        let g = zz2();
        assert_eq!(
            guard_solutions(&g, &none, &additive("2y = 0 & y != 0"), "y").unwrap(),
            GuardSolutions::Finite(vec![pair(2, 0, 1)])
        );
        assert_eq!(guard_solutions(&g, &none, &additive("y != 0"), "y").unwrap(), GuardSolutions::Infinite);
        let params = BTreeMap::from([("s".to_string(), q(1, 1))]);
        assert_eq!(
            guard_solutions(&Ambient::Rationals, &params, &additive("3y = 2s"), "y").unwrap(),
            GuardSolutions::Finite(vec![q(2, 3)])
        );
        assert!(matches!(
            guard_solutions(&g, &none, &additive("2y = 0 | y = 0"), "y"),
            Err(GuardError::NonlinearGuard(_))
        ));
    }

    #[test]
    fn integer_coordinates_need_integral_solutions() {
        let none = BTreeMap::new();
        let z = Ambient::Fg(FgAbelian::new(1, vec![]).unwrap());
        let one = |n: i64| AmbientElement::Fg(FgAbelian::new(1, vec![]).unwrap().element(vec![n.into()], vec![]).unwrap());
        let params = BTreeMap::from([("s".to_string(), one(1))]);
        assert_eq!(guard_solutions(&z, &params, &additive("2y = 3s"), "y").unwrap(), GuardSolutions::Finite(vec![]));
        assert_eq!(guard_solutions(&z, &params, &additive("2y = 4s"), "y").unwrap(), GuardSolutions::Finite(vec![one(2)]));
        assert_eq!(guard_solutions(&z, &none, &additive("0y = 0"), "y").unwrap(), GuardSolutions::Infinite);
    }

    #[test]
    fn defines_in_z_times_z2() {
        let g = zz2();
        let ev = GuardedEvaluator::new(&g).with_param("s", pair(2, 1, 0));
        let f = additive("forall y ((2y=0 & y!=0) -> x = 3s + y)");
        assert_eq!(ev.solutions(&f, "x").unwrap(), GuardSolutions::Finite(vec![pair(2, 3, 1)]));
        assert!(ev.check_defines(&f, "x", &pair(2, 3, 1)).unwrap());
        assert!(!ev.check_defines(&f, "x", &pair(2, 3, 0)).unwrap());
        let env = BTreeMap::from([("x".to_string(), pair(2, 3, 1))]);
        assert!(ev.evaluate(&f, &env).unwrap());
    }

    #[test]
    fn rationals() {
        let g = Ambient::Rationals;
        let ev = GuardedEvaluator::new(&g).with_param("s", q(1, 1));
        assert!(ev.check_defines(&additive("2x = 4s"), "x", &q(2, 1)).unwrap());
        assert!(ev.check_defines(&additive("3x = -2s"), "x", &q(-2, 3)).unwrap());
        assert_eq!(ev.solutions(&additive("x != s"), "x").unwrap(), GuardSolutions::Infinite);
        assert_eq!(ev.solutions(&additive("x = x + s"), "x").unwrap(), GuardSolutions::Finite(vec![]));
    }

    #[test]
    fn rationals_times_z2() {
        let g = Ambient::RationalsTimesZ2;
        let ev = GuardedEvaluator::new(&g).with_param("s", qz2(1, 1, 0));
        // n odd: z = m/n is forced, and x = (m/n, 1)
        let f = additive("forall y forall z ((2y=0 & y!=0 & 3z = 2s) -> x = y+z)");
        assert_eq!(ev.solutions(&f, "x").unwrap(), GuardSolutions::Finite(vec![qz2(2, 3, 1)]));
        // n even: both (3/2, 0) and (3/2, 1) solve 2z = 3s, so no x works
        let f = additive("forall y forall z ((2y=0 & y!=0 & 2z = 3s) -> x = y+z)");
        assert_eq!(ev.solutions(&f, "x").unwrap(), GuardSolutions::Finite(vec![]));
        assert_eq!(ev.solutions(&additive("2x = 3s"), "x").unwrap(), GuardSolutions::Finite(vec![qz2(3, 2, 0), qz2(3, 2, 1)]));
        // 2-divisibility separates them
        let f = additive("forall y forall z ((2y=0 & y!=0 & 2z = 3s & (exists w (2w = z))) -> x = y+z)");
        assert_eq!(ev.solutions(&f, "x").unwrap(), GuardSolutions::Finite(vec![qz2(3, 2, 1)]));
    }

    #[test]
    fn refuses_unguarded_quantifiers() {
        let g = zz2();
        let ev = GuardedEvaluator::new(&g).with_param("s", pair(2, 1, 0));
        let env = BTreeMap::from([("x".to_string(), pair(2, 0, 0))]);
        assert!(matches!(ev.evaluate(&additive("exists y (y != x)"), &env), Err(GuardError::UnguardedQuantifier(_))));
        // fine once x is known, but its solution set cannot be computed
        let f = additive("exists y (y = x + s & 2y = 2s)");
        assert!(ev.evaluate(&f, &BTreeMap::from([("x".to_string(), pair(2, 0, 1))])).unwrap());
        assert!(matches!(ev.solutions(&additive("exists y (y = x + s)"), "x"), Err(GuardError::Undetermined(_))));
    }

    #[test]
    fn finite_ambients_enumerate() {
        let g = Ambient::Fg(FgAbelian::new(0, vec![2, 4]).unwrap());
        let ev = GuardedEvaluator::new(&g);
        match ev.solutions(&additive("2x = 0"), "x").unwrap() {
            GuardSolutions::Finite(v) => assert_eq!(v.len(), 4),
            GuardSolutions::Infinite => panic!("finite group"),
        }
        assert!(ev.evaluate(&additive("forall y (4y = 0)"), &BTreeMap::new()).unwrap());
    }

    #[test]
    fn shape_mismatch() {
        let g = zz2();
        let ev = GuardedEvaluator::new(&g).with_param("s", q(1, 1));
        assert!(matches!(ev.solutions(&additive("x = s"), "x"), Err(GuardError::Shape(_))));
    }
}
