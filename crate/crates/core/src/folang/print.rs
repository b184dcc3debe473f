//! Pretty-printer producing text the parser reads back to the same AST.

use std::fmt;

use super::ast::{Formula, Term};
use super::parse::Dialect;

pub fn print_formula(f: &Formula, dialect: Dialect) -> String {
    let mut out = String::new();
    Printer { dialect, out: &mut out }.formula(f);
    out
}

pub fn print_term(t: &Term, dialect: Dialect) -> String {
    let mut out = String::new();
    Printer { dialect, out: &mut out }.term(t);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self, Dialect::Multiplicative))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self, Dialect::Multiplicative))
    }
}

struct Printer<'o> {
    dialect: Dialect,
    out: &'o mut String,
}

impl Printer<'_> {
    fn push(&mut self, s: &str) {
        self.out.push_str(s);
    }

    fn formula(&mut self, f: &Formula) {
        match f {
            Formula::Exists(..) | Formula::ForAll(..) => self.quant(f),
            _ => self.implication(f),
        }
    }

    fn quant(&mut self, f: &Formula) {
        let (word, vars, body) = match f {
            Formula::Exists(v, b) => ("exists", v, b),
            Formula::ForAll(v, b) => ("forall", v, b),
            _ => unreachable!("quant called on a non-quantifier"),
        };
        self.push(word);
        for v in vars {
            self.push(" ");
            self.push(v);
        }
        self.push(" ");
        if matches!(**body, Formula::Exists(..) | Formula::ForAll(..)) {
            self.quant(body);
        } else {
            self.push("(");
            self.formula(body);
            self.push(")");
        }
    }

    fn implication(&mut self, f: &Formula) {
        if let Formula::Implies(a, b) = f {
            self.disjunction(a);
            self.push(" -> ");
            self.implication(b);
        } else {
            self.disjunction(f);
        }
    }

    fn disjunction(&mut self, f: &Formula) {
        match f {
            Formula::Or(xs) if xs.len() >= 2 => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        self.push(" | ");
                    }
                    self.conjunction(x);
                }
            }
            _ => self.conjunction(f),
        }
    }

    fn conjunction(&mut self, f: &Formula) {
        match f {
            Formula::And(xs) if xs.len() >= 2 => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        self.push(" & ");
                    }
                    self.atom(x);
                }
            }
            _ => self.atom(f),
        }
    }

    fn atom(&mut self, f: &Formula) {
        match f {
            Formula::Eq(a, b) => {
                self.term(a);
                self.push(" = ");
                self.term(b);
            }
            Formula::Not(inner) => {
                if let Formula::Eq(a, b) = &**inner {
                    self.term(a);
                    self.push(" != ");
                    self.term(b);
                } else {
                    self.push("!");
                    self.atom(inner);
                }
            }
            Formula::And(xs) | Formula::Or(xs) if xs.is_empty() => {
                // the empty conjunction is true, the empty disjunction false
                let id = if self.dialect == Dialect::Additive { "0" } else { "1" };
                let op = if matches!(f, Formula::And(_)) { "=" } else { "!=" };
                self.push(&format!("{id} {op} {id}"));
            }
            _ => {
                self.push("(");
                self.formula(f);
                self.push(")");
            }
        }
    }

    fn term(&mut self, t: &Term) {
        match self.dialect {
            Dialect::Multiplicative => self.product(t),
            Dialect::Additive => self.sum(t),
        }
    }

    fn product(&mut self, t: &Term) {
        if let Term::Product(a, b) = t {
            self.product(a);
            self.push("*");
            self.factor(b);
        } else {
            self.factor(t);
        }
    }

    fn factor(&mut self, t: &Term) {
        match t {
            Term::Var(v) | Term::Param(v) => self.push(v),
            Term::Identity => self.push("1"),
            Term::Power(x, k) => {
                self.factor(x);
                self.push(&format!("^{k}"));
            }
            Term::Inverse(x) => {
                self.factor(x);
                self.push("^-1");
            }
            Term::Product(..) => {
                self.push("(");
                self.product(t);
                self.push(")");
            }
        }
    }

    fn sum(&mut self, t: &Term) {
        if let Term::Product(a, b) = t {
            self.sum(a);
            if let Term::Inverse(x) = &**b {
                self.push(" - ");
                self.unsigned(x);
            } else {
                self.push(" + ");
                self.unsigned(b);
            }
        } else if let Term::Inverse(x) = t {
            self.push("-");
            self.unsigned(x);
        } else {
            self.unsigned(t);
        }
    }

    /// A summand without a leading sign.
    fn unsigned(&mut self, t: &Term) {
        match t {
            Term::Var(v) | Term::Param(v) => self.push(v),
            Term::Identity => self.push("0"),
            Term::Power(x, k) => {
                self.push(&k.to_string());
                match &**x {
                    Term::Var(v) | Term::Param(v) => self.push(v),
                    other => {
                        self.push("(");
                        self.sum(other);
                        self.push(")");
                    }
                }
            }
            Term::Product(..) | Term::Inverse(_) => {
                self.push("(");
                self.sum(t);
                self.push(")");
            }
        }
    }
}
