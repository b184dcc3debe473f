//! Finite groups as validated Cayley tables.
//!
//! Elements are the indices `0..n`; index 0 is always the identity. The
//! table stores `table[i * n + j] = k` where `g_i * g_j = g_k`.

mod build;
mod catalog;
mod cay;

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::limits::DEFAULT_MAX_ORDER;

pub use build::{
    direct_product, make_abelian, make_alternating4, make_cyclic, make_dicyclic, make_dihedral,
    make_quaternion, make_symmetric,
};
pub use catalog::{by_name, catalog_up_to, catalog_up_to_with_limit, fingerprint, Fingerprint};
pub use cay::{parse_cay, read_cay, write_cay, CayError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is outside 0..{order}")]
    NotClosed { row: usize, col: usize, value: usize, order: usize },
    #[error("index 0 is not the identity (row or column 0 at position {index})")]
    NoIdentityAtZero { index: usize },
    #[error("associativity fails for ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("{kind} {index} is not a permutation")]
    NotInvertible { kind: &'static str, index: usize },
    #[error("order {order} exceeds the scale guard {limit}")]
    TooLarge { order: usize, limit: usize },
    #[error("invalid constructor argument: {0}")]
    InvalidArgument(String),
    #[error("element {element} is outside 0..{order}")]
    ElementOutOfRange { element: usize, order: usize },
}

/// A finite group given by its Cayley table. Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
    element_names: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates a square table against the group axioms with the default
    /// scale guard.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Self::from_table_with_limit(rows, DEFAULT_MAX_ORDER)
    }

    pub fn from_table_with_limit(rows: Vec<Vec<usize>>, limit: usize) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > limit {
            return Err(GroupError::TooLarge { order: n, limit });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare { row: i, len: row.len(), expected: n });
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(table, n)
    }

    /// Validates a flat row-major table of order `n`.
    pub(crate) fn from_flat(table: Vec<usize>, n: usize) -> Result<Self, GroupError> {
        assert_eq!(table.len(), n * n);
        for i in 0..n {
            for j in 0..n {
                let v = table[i * n + j];
                if v >= n {
                    return Err(GroupError::NotClosed { row: i, col: j, value: v, order: n });
                }
            }
        }
        for j in 0..n {
            if table[j] != j || table[j * n] != j {
                return Err(GroupError::NoIdentityAtZero { index: j });
            }
        }
        let mut seen = vec![usize::MAX; n];
        for i in 0..n {
            for j in 0..n {
                let v = table[i * n + j];
                if seen[v] == i {
                    return Err(GroupError::NotInvertible { kind: "row", index: i });
                }
                seen[v] = i;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for j in 0..n {
            for i in 0..n {
                let v = table[i * n + j];
                if seen[v] == j {
                    return Err(GroupError::NotInvertible { kind: "column", index: j });
                }
                seen[v] = j;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = table[i * n + j];
                for k in 0..n {
                    if table[ij * n + k] != table[i * n + table[j * n + k]] {
                        return Err(GroupError::NotAssociative(i, j, k));
                    }
                }
            }
        }

        let mut inverses = vec![0; n];
        for (i, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..n).find(|&j| table[i * n + j] == 0).expect("rows are permutations");
        }
        let mut orders = vec![0; n];
        for (g, ord) in orders.iter_mut().enumerate() {
            let mut x = g;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + g];
                k += 1;
            }
            *ord = k;
        }
        Ok(FiniteGroup {
            name: format!("G{n}"),
            order: n,
            table,
            inverses,
            orders,
            element_names: (0..n).map(|i| i.to_string()).collect(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Replaces the element labels. The list must have one entry per element.
    pub fn with_element_names(mut self, names: Vec<String>) -> Result<Self, GroupError> {
        if names.len() != self.order {
            return Err(GroupError::InvalidArgument(format!(
                "{} element names for a group of order {}",
                names.len(),
                self.order
            )));
        }
        self.element_names = names;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let e = k.unsigned_abs() % self.orders[a] as u64;
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.elements().map(|i| self.row(i).to_vec()).collect()
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.element_names[a]
    }

    pub fn element_names(&self) -> &[String] {
        &self.element_names
    }

    /// Resolves an element either by its label or by its decimal index.
    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        let name = name.trim();
        self.element_names
            .iter()
            .position(|n| n == name)
            .or_else(|| name.parse::<usize>().ok().filter(|&i| i < self.order))
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.orders[g]
    }

    pub fn element_orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.contains(&self.order)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|i| (i + 1..n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn center(&self) -> Subset {
        self.centralizer(&Subset::full(self.order))
    }

    pub fn centralizer(&self, s: &Subset) -> Subset {
        let members = self
            .elements()
            .filter(|&g| s.iter().all(|x| self.commute(g, x)))
            .collect();
        Subset::from_sorted_unchecked(self.order, members)
    }

    /// The subgroup generated by `s`.
    pub fn subgroup_generated(&self, s: &Subset) -> Subset {
        self.closure_of(s.iter())
    }

    pub(crate) fn closure_of(&self, gens: impl IntoIterator<Item = usize>) -> Subset {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subset::from_mask(&inside)
    }

    /// True if `s` is closed under products and inverses and contains the identity.
    pub fn is_subgroup(&self, s: &Subset) -> bool {
        s.contains(0)
            && s.iter().all(|a| s.contains(self.inv(a)))
            && s.iter().all(|a| s.iter().all(|b| s.contains(self.mul(a, b))))
    }

    /// The table restricted to a subgroup, relabelled in increasing index order.
    pub fn restrict(&self, sub: &Subset) -> Result<FiniteGroup, GroupError> {
        if !self.is_subgroup(sub) {
            return Err(GroupError::InvalidArgument("subset is not a subgroup".into()));
        }
        let members: Vec<usize> = sub.iter().collect();
        let mut position = vec![usize::MAX; self.order];
        for (k, &m) in members.iter().enumerate() {
            position[m] = k;
        }
        let m = members.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &members {
            for &b in &members {
                table.push(position[self.mul(a, b)]);
            }
        }
        let names = members.iter().map(|&a| self.element_names[a].clone()).collect();
        FiniteGroup::from_flat(table, m)?.with_element_names(names)
    }

    pub fn check_element(&self, g: usize) -> Result<(), GroupError> {
        if g < self.order {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfRange { element: g, order: self.order })
        }
    }

    pub fn format_subset(&self, s: &Subset) -> String {
        let names: Vec<&str> = s.iter().map(|a| self.element_name(a)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// A sorted, duplicate-free set of element indices of a group of order
/// `universe`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    universe: usize,
    members: Vec<usize>,
}

impl Subset {
    pub fn new(universe: usize, members: impl IntoIterator<Item = usize>) -> Result<Self, GroupError> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| m >= universe) {
            return Err(GroupError::ElementOutOfRange { element: bad, order: universe });
        }
        members.sort_unstable();
        members.dedup();
        Ok(Subset { universe, members })
    }

    pub(crate) fn from_sorted_unchecked(universe: usize, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|&m| m < universe));
        Subset { universe, members }
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        let members = mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
        Subset { universe: mask.len(), members }
    }

    pub fn empty(universe: usize) -> Self {
        Subset { universe, members: Vec::new() }
    }

    pub fn full(universe: usize) -> Self {
        Subset { universe, members: (0..universe).collect() }
    }

    pub fn singleton(universe: usize, g: usize) -> Result<Self, GroupError> {
        Subset::new(universe, [g])
    }

    /// The subset whose members are the set bits of `bits`.
    pub fn from_bits(universe: usize, bits: u64) -> Self {
        let members = (0..universe.min(64)).filter(|&i| bits >> i & 1 == 1).collect();
        Subset { universe, members }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.iter().all(|g| other.contains(g))
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut members = self.members.clone();
        members.extend(other.iter());
        members.sort_unstable();
        members.dedup();
        Subset { universe: self.universe.max(other.universe), members }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let members = self.iter().filter(|&g| other.contains(g)).collect();
        Subset { universe: self.universe, members }
    }

    pub fn to_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.universe];
        for g in self.iter() {
            mask[g] = true;
        }
        mask
    }
}
