//! Backtracking over generator images.
//!
//! A partial map is grown one generator at a time. Each assignment is
//! propagated to the whole subgroup generated so far by closing under the
//! table (`f(a b) = f(a) f(b)`); any clash with an existing image, or an
//! image already taken by another element, rejects the branch. When every
//! generator is placed the map is a bijective homomorphism.

use std::ops::ControlFlow;

use super::AutError;
use crate::group::FiniteGroup;

const UNMAPPED: usize = usize::MAX;

/// Automorphism invariants of an element; an automorphism maps an element
/// only to elements with the same signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Signature {
    order: usize,
    centralizer: usize,
    square_roots: usize,
}

pub(crate) fn signatures(g: &FiniteGroup) -> Vec<Signature> {
    let n = g.order();
    let mut square_roots = vec![0; n];
    for x in g.elements() {
        square_roots[g.mul(x, x)] += 1;
    }
    g.elements()
        .map(|a| Signature {
            order: g.element_order(a),
            centralizer: (0..n).filter(|&x| g.commute(a, x)).count(),
            square_roots: square_roots[a],
        })
        .collect()
}

/// Greedy generating set of `g` relative to the subgroup generated by
/// `base`: repeatedly adds the element whose inclusion grows the closure
/// most (smallest index on ties).
pub(crate) fn greedy_generators(g: &FiniteGroup, base: &[usize]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut span = g.closure_of(base.iter().copied());
    while span.len() < g.order() {
        let mut best = (0, usize::MAX);
        for x in g.elements().filter(|&x| !span.contains(x)) {
            let size = g.closure_of(base.iter().chain(&chosen).copied().chain([x])).len();
            if size > best.0 {
                best = (size, x);
            }
        }
        chosen.push(best.1);
        span = g.closure_of(base.iter().chain(&chosen).copied());
    }
    chosen
}

pub(crate) struct AutSearch<'g> {
    group: &'g FiniteGroup,
    signatures: Vec<Signature>,
    /// generators whose images are chosen by the search, in order
    pub(crate) gens: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    /// elements with an image, in assignment order; doubles as the undo trail
    mapped: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl<'g> AutSearch<'g> {
    /// A search over automorphisms fixing every element of `fixed`.
    pub(crate) fn new(group: &'g FiniteGroup, fixed: &[usize], budget: u64) -> Self {
        let n = group.order();
        let mut search = AutSearch {
            group,
            signatures: signatures(group),
            gens: greedy_generators(group, fixed),
            map: vec![UNMAPPED; n],
            used: vec![false; n],
            mapped: Vec::with_capacity(n),
            nodes: 0,
            budget,
        };
        search.map[0] = 0;
        search.used[0] = true;
        search.mapped.push(0);
        for &s in fixed {
            if search.map[s] == UNMAPPED {
                let ok = search.assign(s, s);
                debug_assert!(ok, "the identity map is consistent on any subgroup");
            }
        }
        search
    }

    /// Sets `x -> y` and closes the partial map under products. Returns
    /// false on a conflict; the caller must `undo` to the saved trail length
    /// either way.
    pub(crate) fn assign(&mut self, x: usize, y: usize) -> bool {
        if self.map[x] != UNMAPPED {
            return self.map[x] == y;
        }
        if self.used[y] {
            return false;
        }
        let g = self.group;
        self.map[x] = y;
        self.used[y] = true;
        let mut queue = vec![x];
        self.mapped.push(x);
        while let Some(a) = queue.pop() {
            let mut k = 0;
            while k < self.mapped.len() {
                let b = self.mapped[k];
                k += 1;
                for (p, q) in [(a, b), (b, a)] {
                    let prod = g.mul(p, q);
                    let image = g.mul(self.map[p], self.map[q]);
                    let current = self.map[prod];
                    if current == UNMAPPED {
                        if self.used[image] {
                            return false;
                        }
                        self.map[prod] = image;
                        self.used[image] = true;
                        self.mapped.push(prod);
                        queue.push(prod);
                    } else if current != image {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub(crate) fn trail_len(&self) -> usize {
        self.mapped.len()
    }

    pub(crate) fn undo(&mut self, len: usize) {
        while self.mapped.len() > len {
            let x = self.mapped.pop().expect("non-empty trail");
            self.used[self.map[x]] = false;
            self.map[x] = UNMAPPED;
        }
    }

    fn tick(&mut self) -> Result<(), AutError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(AutError::BudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    /// Candidate images of generator `gens[level]` that are compatible with
    /// its signature and not already used.
    pub(crate) fn candidates(&self, level: usize) -> Vec<usize> {
        let x = self.gens[level];
        let sig = self.signatures[x];
        self.group
            .elements()
            .filter(|&y| !self.used[y] && self.signatures[y] == sig)
            .collect()
    }

    /// Visits every completion of the current partial map from generator
    /// `level` onward.
    pub(crate) fn dfs(
        &mut self,
        level: usize,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, AutError> {
        if level == self.gens.len() {
            debug_assert!(self.map.iter().all(|&y| y != UNMAPPED));
            return Ok(visit(&self.map));
        }
        let x = self.gens[level];
        for y in self.candidates(level) {
            self.tick()?;
            let saved = self.trail_len();
            if self.assign(x, y) {
                if let ControlFlow::Break(()) = self.dfs(level + 1, visit)? {
                    self.undo(saved);
                    return Ok(ControlFlow::Break(()));
                }
            }
            self.undo(saved);
        }
        Ok(ControlFlow::Continue(()))
    }

    /// True if the current partial map extends to an automorphism.
    pub(crate) fn extends(&mut self, level: usize) -> Result<bool, AutError> {
        let flow = self.dfs(level, &mut |_| ControlFlow::Break(()))?;
        Ok(flow.is_break())
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }
}
