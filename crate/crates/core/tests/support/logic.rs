//! Random formulas, textbook rewrites, and a direct-recursion evaluator
//! used as the oracle for the compiled one.

#![allow(dead_code)]

use std::collections::BTreeMap;

use defcyc_core::folang::{Formula, Term};
use defcyc_core::FiniteGroup;
use rand::Rng;

const BOUND: [&str; 3] = ["y", "z", "w"];

pub fn random_term(rng: &mut impl Rng, scope: &[String], depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.4) {
        return match rng.gen_range(0..10) {
            0 => Term::Identity,
            1 | 2 => Term::param("s"),
            _ => Term::var(scope[rng.gen_range(0..scope.len())].clone()),
        };
    }
    match rng.gen_range(0..4) {
        0 | 1 => random_term(rng, scope, depth - 1).mul(random_term(rng, scope, depth - 1)),
        2 => random_term(rng, scope, depth - 1).inverse(),
        _ => Term::Power(Box::new(random_term(rng, scope, depth - 1)), rng.gen_range(0..4)),
    }
}

/// A formula whose only free variable is `x` (plus the parameter `s`).
pub fn random_formula(rng: &mut impl Rng, depth: u32) -> Formula {
    formula(rng, &mut vec!["x".to_string()], depth, 3)
}

fn formula(rng: &mut impl Rng, scope: &mut Vec<String>, depth: u32, quantifiers: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        let f = Formula::eq(random_term(rng, scope, 2), random_term(rng, scope, 2));
        return if rng.gen_bool(0.3) { f.negate() } else { f };
    }
    let pick = if quantifiers == 0 { rng.gen_range(0..4) } else { rng.gen_range(0..6) };
    match pick {
        0 => formula(rng, scope, depth - 1, quantifiers).negate(),
        1 => Formula::And((0..rng.gen_range(2..4)).map(|_| formula(rng, scope, depth - 1, quantifiers)).collect()),
        2 => Formula::Or((0..rng.gen_range(2..4)).map(|_| formula(rng, scope, depth - 1, quantifiers)).collect()),
        3 => formula(rng, scope, depth - 1, quantifiers).implies(formula(rng, scope, depth - 1, quantifiers)),
        _ => {
            let v = BOUND[rng.gen_range(0..BOUND.len())].to_string();
            scope.push(v.clone());
            let body = formula(rng, scope, depth - 1, quantifiers - 1);
            scope.pop();
            if pick == 4 {
                Formula::exists([v], body)
            } else {
                Formula::forall([v], body)
            }
        }
    }
}

fn term_value(g: &FiniteGroup, t: &Term, env: &[(String, usize)], params: &BTreeMap<String, usize>) -> usize {
    match t {
        Term::Var(v) => env.iter().rev().find(|(n, _)| n == v).expect("bound variable").1,
        Term::Param(p) => params[p],
        Term::Identity => 0,
        Term::Product(a, b) => g.mul(term_value(g, a, env, params), term_value(g, b, env, params)),
        Term::Inverse(a) => {
            let x = term_value(g, a, env, params);
            g.elements().find(|&y| g.mul(x, y) == 0).expect("inverse exists")
        }
        Term::Power(a, k) => {
            let x = term_value(g, a, env, params);
            let base = if *k < 0 { g.elements().find(|&y| g.mul(x, y) == 0).unwrap() } else { x };
            (0..k.unsigned_abs()).fold(0, |acc, _| g.mul(acc, base))
        }
    }
}

/// Plain Tarskian recursion: every quantifier ranges over all of `G`.
pub fn naive_holds(g: &FiniteGroup, f: &Formula, env: &mut Vec<(String, usize)>, params: &BTreeMap<String, usize>) -> bool {
    match f {
        Formula::Eq(a, b) => term_value(g, a, env, params) == term_value(g, b, env, params),
        Formula::Not(x) => !naive_holds(g, x, env, params),
        Formula::And(xs) => xs.iter().all(|x| naive_holds(g, x, env, params)),
        Formula::Or(xs) => xs.iter().any(|x| naive_holds(g, x, env, params)),
        Formula::Implies(a, b) => !naive_holds(g, a, env, params) || naive_holds(g, b, env, params),
        Formula::Exists(vs, body) | Formula::ForAll(vs, body) => {
            let want = matches!(f, Formula::Exists(..));
            assignments(g, vs.len()).into_iter().any(|values| {
                let depth = env.len();
                env.extend(vs.iter().cloned().zip(values));
                let r = naive_holds(g, body, env, params);
                env.truncate(depth);
                r == want
            }) == want
        }
    }
}

fn assignments(g: &FiniteGroup, k: usize) -> Vec<Vec<usize>> {
    (0..k).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                g.elements().map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect()
    })
}

/// Negation normal form: negations only on atoms (De Morgan and
/// quantifier duality).
pub fn nnf(f: &Formula, positive: bool) -> Formula {
    match f {
        Formula::Eq(..) if positive => f.clone(),
        Formula::Eq(..) => f.clone().negate(),
        Formula::Not(x) => nnf(x, !positive),
        Formula::And(xs) | Formula::Or(xs) => {
            let parts = xs.iter().map(|x| nnf(x, positive)).collect();
            if matches!(f, Formula::And(_)) == positive {
                Formula::And(parts)
            } else {
                Formula::Or(parts)
            }
        }
        Formula::Implies(a, b) => {
            if positive {
                Formula::Or(vec![nnf(a, false), nnf(b, true)])
            } else {
                Formula::And(vec![nnf(a, true), nnf(b, false)])
            }
        }
        Formula::Exists(vs, b) | Formula::ForAll(vs, b) => {
            let body = nnf(b, positive);
            if matches!(f, Formula::Exists(..)) == positive {
                Formula::Exists(vs.clone(), Box::new(body))
            } else {
                Formula::ForAll(vs.clone(), Box::new(body))
            }
        }
    }
}

fn rename_term(t: &Term, scope: &[(String, String)]) -> Term {
    match t {
        Term::Var(v) => Term::Var(scope.iter().rev().find(|(o, _)| o == v).map_or(v.clone(), |(_, n)| n.clone())),
        Term::Param(_) | Term::Identity => t.clone(),
        Term::Product(a, b) => rename_term(a, scope).mul(rename_term(b, scope)),
        Term::Inverse(a) => rename_term(a, scope).inverse(),
        Term::Power(a, k) => Term::Power(Box::new(rename_term(a, scope)), *k),
    }
}

/// Gives every bound variable a distinct fresh name.
pub fn rename_apart(f: &Formula, scope: &mut Vec<(String, String)>, counter: &mut usize) -> Formula {
    match f {
        Formula::Eq(a, b) => Formula::eq(rename_term(a, scope), rename_term(b, scope)),
        Formula::Not(x) => rename_apart(x, scope, counter).negate(),
        Formula::And(xs) => Formula::And(xs.iter().map(|x| rename_apart(x, scope, counter)).collect()),
        Formula::Or(xs) => Formula::Or(xs.iter().map(|x| rename_apart(x, scope, counter)).collect()),
        Formula::Implies(a, b) => rename_apart(a, scope, counter).implies(rename_apart(b, scope, counter)),
        Formula::Exists(vs, b) | Formula::ForAll(vs, b) => {
            let depth = scope.len();
            let fresh: Vec<String> = vs
                .iter()
                .map(|v| {
                    *counter += 1;
                    let n = format!("v{counter}");
                    scope.push((v.clone(), n.clone()));
                    n
                })
                .collect();
            let body = Box::new(rename_apart(b, scope, counter));
            scope.truncate(depth);
            if matches!(f, Formula::Exists(..)) {
                Formula::Exists(fresh, body)
            } else {
                Formula::ForAll(fresh, body)
            }
        }
    }
}

/// Prenex form of a formula in negation normal form with bound variables
/// renamed apart (the domain is never empty, so quantifiers commute with
/// `&` and `|` over subformulas not mentioning them).
pub fn prenex(f: &Formula) -> Formula {
    fn pull(f: &Formula, prefix: &mut Vec<(bool, Vec<String>)>) -> Formula {
        match f {
            Formula::And(xs) => Formula::And(xs.iter().map(|x| pull(x, prefix)).collect()),
            Formula::Or(xs) => Formula::Or(xs.iter().map(|x| pull(x, prefix)).collect()),
            Formula::Exists(vs, b) => {
                prefix.push((true, vs.clone()));
                pull(b, prefix)
            }
            Formula::ForAll(vs, b) => {
                prefix.push((false, vs.clone()));
                pull(b, prefix)
            }
            _ => f.clone(),
        }
    }
    let mut prefix = Vec::new();
    let matrix = pull(f, &mut prefix);
    prefix.into_iter().rev().fold(matrix, |body, (exists, vs)| {
        if exists {
            Formula::Exists(vs, Box::new(body))
        } else {
            Formula::ForAll(vs, Box::new(body))
        }
    })
}

/// The rewrites that must preserve truth: double negation, negation normal
/// form, and prenex form.
pub fn equivalents(f: &Formula) -> Vec<(&'static str, Formula)> {
    let n = nnf(f, true);
    let p = prenex(&rename_apart(&n, &mut Vec::new(), &mut 0));
    vec![("double negation", f.clone().negate().negate()), ("de morgan", n), ("prenex", p)]
}
