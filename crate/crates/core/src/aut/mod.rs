//! Automorphism groups of finite groups.
//!
//! Automorphisms are stored as index arrays and composed right-to-left:
//! `(a ∘ b)(x) = a(b(x))`.

mod hillar_rhea;
mod search;

use std::fmt;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, Subset};
use crate::limits::{Limits, DEFAULT_AUT_NODES};

pub use hillar_rhea::{hillar_rhea_order, AbelianPShape};
use search::AutSearch;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("automorphism search exhausted its budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },
    #[error("map is not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid p-group shape: {0}")]
    InvalidShape(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    map: Vec<usize>,
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism{:?}", self.map)
    }
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Automorphism { map: (0..n).collect() }
    }

    /// Checks that `map` is a bijection fixing 0 that respects the table.
    pub fn from_map(g: &FiniteGroup, map: Vec<usize>) -> Result<Self, AutError> {
        let n = g.order();
        if map.len() != n {
            return Err(AutError::NotAnAutomorphism(format!("length {} != {n}", map.len())));
        }
        let mut seen = vec![false; n];
        for &y in &map {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return Err(AutError::NotAnAutomorphism("not a bijection".into()));
            }
        }
        if map[0] != 0 {
            return Err(AutError::NotAnAutomorphism("identity is moved".into()));
        }
        let aut = Automorphism { map };
        if let Some((i, j)) = aut.homomorphism_violation(g) {
            return Err(AutError::NotAnAutomorphism(format!("f({i}*{j}) != f({i})*f({j})")));
        }
        Ok(aut)
    }

    fn homomorphism_violation(&self, g: &FiniteGroup) -> Option<(usize, usize)> {
        for i in g.elements() {
            for j in g.elements() {
                if self.map[g.mul(i, j)] != g.mul(self.map[i], self.map[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { map: other.map.iter().map(|&x| self.map[x]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut map = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            map[y] = x;
        }
        Automorphism { map }
    }

    pub fn fixes(&self, s: &Subset) -> bool {
        s.iter().all(|x| self.map[x] == x)
    }

    /// Renders the map as `x->y` pairs over the moved elements.
    pub fn describe(&self, g: &FiniteGroup) -> String {
        let moved: Vec<String> = self
            .map
            .iter()
            .enumerate()
            .filter(|(x, &y)| *x != y)
            .map(|(x, &y)| format!("{}->{}", g.element_name(x), g.element_name(y)))
            .collect();
        if moved.is_empty() {
            "id".to_string()
        } else {
            format!("[{}]", moved.join(", "))
        }
    }
}

/// A finite list of automorphisms of `group`, identity first and otherwise
/// sorted lexicographically by map.
#[derive(Debug, Clone)]
pub struct AutGroup<'g> {
    group: &'g FiniteGroup,
    elements: Vec<Automorphism>,
}

impl<'g> AutGroup<'g> {
    fn from_unsorted(group: &'g FiniteGroup, mut elements: Vec<Automorphism>) -> Self {
        // the identity map is the lexicographically least permutation
        elements.sort();
        for a in &elements {
            debug_assert!(a.homomorphism_violation(group).is_none());
        }
        AutGroup { group, elements }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = &Automorphism> {
        self.elements.iter()
    }

    pub fn contains(&self, a: &Automorphism) -> bool {
        self.elements.binary_search(a).is_ok()
    }

    /// True if the list is closed under composition and inverses.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| self.contains(&a.inverse()))
            && self
                .elements
                .iter()
                .all(|a| self.elements.iter().all(|b| self.contains(&a.compose(b))))
    }
}

/// Greedy generating set: each added element at least doubles the span, so
/// the result has at most `log2 |G|` elements.
pub fn generating_set(g: &FiniteGroup) -> Subset {
    Subset::new(g.order(), search::greedy_generators(g, &[])).expect("indices in range")
}

/// Every automorphism of `g`, with the default node budget.
pub fn automorphism_group(g: &FiniteGroup) -> Result<AutGroup<'_>, AutError> {
    automorphism_group_with_budget(g, DEFAULT_AUT_NODES)
}

pub fn automorphism_group_with_budget(g: &FiniteGroup, budget: u64) -> Result<AutGroup<'_>, AutError> {
    fixing_automorphisms(g, &Subset::empty(g.order()), budget)
}

/// Every automorphism fixing `s` pointwise, found by a search seeded with
/// `s` rather than by filtering the whole group.
pub fn fixing_automorphisms<'g>(
    g: &'g FiniteGroup,
    s: &Subset,
    budget: u64,
) -> Result<AutGroup<'g>, AutError> {
    check_subset(g, s)?;
    let mut search = AutSearch::new(g, s.as_slice(), budget);
    let mut found = Vec::new();
    let _ = search.dfs(0, &mut |map| {
        found.push(Automorphism { map: map.to_vec() });
        ControlFlow::Continue(())
    })?;
    Ok(AutGroup::from_unsorted(g, found))
}

/// Some non-identity automorphism fixing `s` pointwise, if one exists.
pub fn nontrivial_fixing_automorphism(
    g: &FiniteGroup,
    s: &Subset,
    budget: u64,
) -> Result<Option<Automorphism>, AutError> {
    check_subset(g, s)?;
    let mut search = AutSearch::new(g, s.as_slice(), budget);
    let mut witness = None;
    let _ = search.dfs(0, &mut |map| {
        if map.iter().enumerate().any(|(i, &y)| i != y) {
            witness = Some(Automorphism { map: map.to_vec() });
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(witness)
}

/// `|Aut(G)|` without listing the group: along the generator chain
/// `g_1, ..., g_k`, multiplies the orbit sizes of `g_i` under the
/// automorphisms fixing `g_1, ..., g_{i-1}`. Every counted image is
/// certified by extending it to a full automorphism.
pub fn aut_order(g: &FiniteGroup, limits: &Limits) -> Result<u128, AutError> {
    let mut search = AutSearch::new(g, &[], limits.aut_nodes);
    let mut total: u128 = 1;
    for level in 0..search.gens.len() {
        let x = search.gens[level];
        let mut orbit = 0u128;
        for y in search.candidates(level) {
            let saved = search.trail_len();
            if search.assign(x, y) && search.extends(level + 1)? {
                orbit += 1;
            }
            search.undo(saved);
            if search.nodes() > limits.aut_nodes {
                return Err(AutError::BudgetExceeded { budget: limits.aut_nodes });
            }
        }
        total *= orbit;
        let ok = search.assign(x, x);
        debug_assert!(ok);
    }
    Ok(total)
}

fn check_subset(g: &FiniteGroup, s: &Subset) -> Result<(), AutError> {
    if let Some(bad) = s.iter().find(|&x| x >= g.order()) {
        return Err(GroupError::ElementOutOfRange { element: bad, order: g.order() }.into());
    }
    Ok(())
}

/// The automorphisms in `a` that fix every element of `s`.
pub fn pointwise_stabilizer<'g>(a: &AutGroup<'g>, s: &Subset) -> AutGroup<'g> {
    let elements = a.elements.iter().filter(|alpha| alpha.fixes(s)).cloned().collect();
    AutGroup { group: a.group, elements }
}

/// Elements fixed by every automorphism in `a`.
pub fn fixed_subgroup(a: &AutGroup<'_>) -> Subset {
    let g = a.group;
    let members: Vec<usize> = g.elements().filter(|&x| a.iter().all(|alpha| alpha.apply(x) == x)).collect();
    Subset::from_sorted_unchecked(g.order(), members)
}

pub fn orbit(a: &AutGroup<'_>, s: usize) -> Subset {
    Subset::new(a.group.order(), a.iter().map(|alpha| alpha.apply(s))).expect("indices in range")
}
