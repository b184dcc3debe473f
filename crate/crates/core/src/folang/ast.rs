use std::collections::BTreeSet;

/// A term of the group language `(·, ^-1, 1)` extended by parameter constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    /// A parameter constant, bound to an element at evaluation time.
    Param(String),
    Identity,
    Product(Box<Term>, Box<Term>),
    Inverse(Box<Term>),
    /// `t^k`; negative exponents are allowed and mean `(t^-1)^|k|`.
    Power(Box<Term>, i64),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn param(name: impl Into<String>) -> Term {
        Term::Param(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Term) -> Term {
        Term::Product(Box::new(self), Box::new(other))
    }

    pub fn inverse(self) -> Term {
        Term::Inverse(Box::new(self))
    }

    /// `self^k`, with a negative exponent rewritten as the inverse of a
    /// positive power.
    pub fn pow(self, k: i64) -> Term {
        if k < 0 {
            Term::Power(Box::new(self), -k).inverse()
        } else {
            Term::Power(Box::new(self), k)
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Param(_) | Term::Identity => {}
            Term::Product(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Inverse(a) | Term::Power(a, _) => a.collect_vars(out),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_params(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Param(p) => {
                out.insert(p.clone());
            }
            Term::Var(_) | Term::Identity => {}
            Term::Product(a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
            Term::Inverse(a) | Term::Power(a, _) => a.collect_params(out),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
    ForAll(Vec<String>, Box<Formula>),
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn ne(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b).negate()
    }

    pub fn negate(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn implies(self, other: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn exists<S: Into<String>>(vars: impl IntoIterator<Item = S>, body: Formula) -> Formula {
        Formula::Exists(vars.into_iter().map(Into::into).collect(), Box::new(body))
    }

    pub fn forall<S: Into<String>>(vars: impl IntoIterator<Item = S>, body: Formula) -> Formula {
        Formula::ForAll(vars.into_iter().map(Into::into).collect(), Box::new(body))
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) => {
                for v in a.vars().into_iter().chain(b.vars()) {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.collect_free(bound, out);
                }
            }
            Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(vs, f) | Formula::ForAll(vs, f) => {
                let depth = bound.len();
                bound.extend(vs.iter().cloned());
                f.collect_free(bound, out);
                bound.truncate(depth);
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a, b| {
            a.collect_params(&mut out);
            b.collect_params(&mut out);
        });
        out
    }

    pub(crate) fn visit_atoms(&self, f: &mut impl FnMut(&Term, &Term)) {
        match self {
            Formula::Eq(a, b) => f(a, b),
            Formula::Not(x) => x.visit_atoms(f),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| x.visit_atoms(f)),
            Formula::Implies(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
            Formula::Exists(_, x) | Formula::ForAll(_, x) => x.visit_atoms(f),
        }
    }

    /// Number of nodes, used to bound generated formulas in tests.
    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(..) => 1,
            Formula::Not(x) => 1 + x.size(),
            Formula::And(xs) | Formula::Or(xs) => 1 + xs.iter().map(Formula::size).sum::<usize>(),
            Formula::Implies(a, b) => 1 + a.size() + b.size(),
            Formula::Exists(_, x) | Formula::ForAll(_, x) => 1 + x.size(),
        }
    }
}
