//! The formula that pins an element down by describing the whole Cayley
//! table:
//!
//! ```text
//! exists x1 ... xn ( &_{i<j} xi != xj  &  &_{s in S} x_s = a_s  &  x1 = 1
//!                    &  &_{i,j} xi*xj = x_{ij}  &  y = x_g )
//! ```
//!
//! A satisfying tuple is the image of the table under a bijection that
//! respects multiplication and fixes `S`, i.e. an automorphism fixing `S`,
//! so the formula defines `g` exactly when every such automorphism fixes
//! `g`.

use std::collections::BTreeMap;

use super::ast::{Formula, Term};
use crate::group::{FiniteGroup, GroupError, Subset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyFormula {
    pub formula: Formula,
    /// Parameter name to element, one per member of `S`.
    pub params: BTreeMap<String, usize>,
    pub free_var: String,
    /// `enumeration[k]` is the element represented by `x{k+1}`: the
    /// identity, then `S`, then everything else, each in index order.
    pub enumeration: Vec<usize>,
}

pub fn param_name(element: usize) -> String {
    format!("a{element}")
}

pub fn cayley_formula(g: &FiniteGroup, s: &Subset, target: usize) -> Result<CayleyFormula, GroupError> {
    g.check_element(target)?;
    if s.universe() != g.order() {
        return Err(GroupError::InvalidArgument(format!(
            "parameter set over {} elements for a group of order {}",
            s.universe(),
            g.order()
        )));
    }
    let n = g.order();
    let mut enumeration = vec![g.identity()];
    enumeration.extend(s.iter().filter(|&e| e != g.identity()));
    enumeration.extend(g.elements().filter(|&e| e != g.identity() && !s.contains(e)));
    let mut position = vec![0; n];
    for (k, &e) in enumeration.iter().enumerate() {
        position[e] = k;
    }
    let x = |e: usize| Term::var(format!("x{}", position[e] + 1));

    let mut conjuncts = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            conjuncts.push(Formula::ne(x(enumeration[i]), x(enumeration[j])));
        }
    }
    for e in s.iter() {
        conjuncts.push(Formula::eq(x(e), Term::param(param_name(e))));
    }
    conjuncts.push(Formula::eq(x(g.identity()), Term::Identity));
    for &a in &enumeration {
        for &b in &enumeration {
            conjuncts.push(Formula::eq(x(a).mul(x(b)), x(g.mul(a, b))));
        }
    }
    let free_var = "y".to_string();
    conjuncts.push(Formula::eq(Term::var(&free_var), x(target)));

    let vars = (1..=n).map(|k| format!("x{k}"));
    Ok(CayleyFormula {
        formula: Formula::exists(vars, Formula::And(conjuncts)),
        params: s.iter().map(|e| (param_name(e), e)).collect(),
        free_var,
        enumeration,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folang::Evaluator;
    use crate::group::{make_abelian, make_cyclic};

    fn evaluator<'g>(g: &'g FiniteGroup, c: &CayleyFormula) -> Evaluator<'g> {
        Evaluator::new(g).with_params(c.params.clone())
    }

    #[test]
    fn trivial_group() {
        let t = make_cyclic(1).unwrap();
        let c = cayley_formula(&t, &Subset::empty(1), 0).unwrap();
        assert_eq!(c.formula.to_string(), "exists x1 (x1 = 1 & x1*x1 = x1 & y = x1)");
        assert!(evaluator(&t, &c).check_defines(&c.formula, "y", 0).unwrap());
    }

    #[test]
    fn z3_with_a_generator() {
        let z3 = make_cyclic(3).unwrap();
        let c = cayley_formula(&z3, &Subset::new(3, [1]).unwrap(), 2).unwrap();
        assert_eq!(c.enumeration, vec![0, 1, 2]);
        let ev = evaluator(&z3, &c);
        let holds = |y| ev.evaluate(&c.formula, &[("y".to_string(), y)].into()).unwrap();
        assert!(holds(2));
        assert!(!holds(0));
        assert!(!holds(1));
    }

    #[test]
    fn parameters_come_first() {
        let z6 = make_cyclic(6).unwrap();
        let c = cayley_formula(&z6, &Subset::new(6, [0, 4]).unwrap(), 3).unwrap();
        assert_eq!(c.enumeration, vec![0, 4, 1, 2, 3, 5]);
        assert_eq!(c.params, BTreeMap::from([("a0".into(), 0), ("a4".into(), 4)]));
    }

    #[test]
    fn z2_and_klein() {
        let z2 = make_cyclic(2).unwrap();
        let c = cayley_formula(&z2, &Subset::empty(2), 1).unwrap();
        assert!(evaluator(&z2, &c).check_defines(&c.formula, "y", 1).unwrap());

        let klein = make_abelian(&[2, 2]).unwrap();
        for g in 1..4 {
            let c = cayley_formula(&klein, &Subset::empty(4), g).unwrap();
            let ev = evaluator(&klein, &c);
            assert!(!ev.check_defines(&c.formula, "y", g).unwrap());
            assert_eq!(ev.solutions(&c.formula, "y").unwrap().as_slice(), &[1, 2, 3]);
        }
    }

    #[test]
    fn rejects_mismatched_inputs() {
        let z3 = make_cyclic(3).unwrap();
        assert!(cayley_formula(&z3, &Subset::empty(4), 0).is_err());
        assert!(cayley_formula(&z3, &Subset::empty(3), 3).is_err());
    }
}
