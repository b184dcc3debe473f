//! Named test corpus of finite groups.
//!
//! Orders 1..=15 are covered completely: one representative per isomorphism
//! class (28 groups). Orders 16..=N come from a declared, non-exhaustive
//! family: every abelian group, dihedral and dicyclic groups, and direct
//! products of the non-abelian groups of order <= 15 with cyclic groups or
//! with each other.

use super::{
    direct_product, make_abelian, make_alternating4, make_cyclic, make_dicyclic, make_dihedral,
    make_quaternion, make_symmetric, FiniteGroup, GroupError,
};
use crate::limits::DEFAULT_CATALOG_MAX;

/// Largest order for which the catalog is a complete list of isomorphism classes.
pub const COMPLETE_UP_TO: usize = 15;

fn complete_catalog() -> Result<Vec<FiniteGroup>, GroupError> {
    let d = |n| make_dihedral(n);
    let ab = |f: &[usize]| make_abelian(f);
    Ok(vec![
        make_cyclic(1)?,
        make_cyclic(2)?,
        make_cyclic(3)?,
        make_cyclic(4)?,
        ab(&[2, 2])?,
        make_cyclic(5)?,
        make_cyclic(6)?,
        make_symmetric(3)?,
        make_cyclic(7)?,
        make_cyclic(8)?,
        ab(&[2, 4])?,
        ab(&[2, 2, 2])?,
        d(4)?,
        make_quaternion()?,
        make_cyclic(9)?,
        ab(&[3, 3])?,
        make_cyclic(10)?,
        d(5)?,
        make_cyclic(11)?,
        make_cyclic(12)?,
        ab(&[2, 6])?,
        make_alternating4()?,
        d(6)?,
        make_dicyclic(3)?,
        make_cyclic(13)?,
        make_cyclic(14)?,
        d(7)?,
        make_cyclic(15)?,
    ])
}

/// Invariant factor lists `m_1 | m_2 | ... | m_k` whose product is `n`.
pub(crate) fn invariant_factor_lists(n: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, prev: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 1 {
            out.push(acc.clone());
            return;
        }
        for d in (prev.max(2)..=remaining).filter(|d| d % prev == 0 && remaining.is_multiple_of(*d)) {
            acc.push(d);
            go(remaining / d, d, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn extended_family(max: usize) -> Result<Vec<FiniteGroup>, GroupError> {
    let mut out = Vec::new();
    let non_abelian: Vec<FiniteGroup> =
        complete_catalog()?.into_iter().filter(|g| !g.is_abelian()).collect();
    for n in (COMPLETE_UP_TO + 1)..=max {
        for factors in invariant_factor_lists(n) {
            out.push(make_abelian(&factors)?);
        }
        if n % 2 == 0 {
            out.push(make_dihedral(n / 2)?);
        }
        if n % 4 == 0 {
            out.push(make_dicyclic(n / 4)?);
        }
        if n == 24 {
            out.push(make_symmetric(4)?);
        }
        for g in &non_abelian {
            if n % g.order() == 0 && n / g.order() >= 2 {
                out.push(direct_product(g, &make_cyclic(n / g.order())?)?);
            }
        }
        for (i, g) in non_abelian.iter().enumerate() {
            for h in &non_abelian[i..] {
                if g.order() * h.order() == n {
                    out.push(direct_product(g, h)?);
                }
            }
        }
    }
    Ok(out)
}

/// Catalog of groups of order `<= max`, sorted by order, with the default
/// scale guard.
pub fn catalog_up_to(max: usize) -> Result<Vec<FiniteGroup>, GroupError> {
    catalog_up_to_with_limit(max, DEFAULT_CATALOG_MAX)
}

pub fn catalog_up_to_with_limit(max: usize, limit: usize) -> Result<Vec<FiniteGroup>, GroupError> {
    if max > limit {
        return Err(GroupError::TooLarge { order: max, limit });
    }
    let mut groups: Vec<FiniteGroup> =
        complete_catalog()?.into_iter().filter(|g| g.order() <= max).collect();
    if max > COMPLETE_UP_TO {
        groups.extend(extended_family(max)?);
    }
    groups.sort_by_key(|g| g.order());
    Ok(groups)
}

/// Builds a group from its catalog-style name: `Z6`, `D8` (order 8), `Q8`,
/// `Dic3`, `S3`, `S4`, `A4`, or a product such as `Z2xZ4` or `S3xZ2`.
pub fn by_name(name: &str) -> Result<FiniteGroup, GroupError> {
    let unknown = || GroupError::InvalidArgument(format!("unknown group name {name:?}"));
    let number = |s: &str| s.parse::<usize>().ok().filter(|&n| n > 0);
    let factors: Vec<&str> = name.trim().split('x').collect();
    let cyclic: Option<Vec<usize>> = factors.iter().map(|f| f.strip_prefix('Z').and_then(number)).collect();
    if let Some(orders) = cyclic {
        return match orders.as_slice() {
            [n] => make_cyclic(*n),
            _ => make_abelian(&orders),
        };
    }
    let mut groups = Vec::with_capacity(factors.len());
    for f in factors {
        let g = if let Some(n) = f.strip_prefix("Dic").and_then(number) {
            make_dicyclic(n)?
        } else if let Some(n) = f.strip_prefix('Z').and_then(number) {
            make_cyclic(n)?
        } else if let Some(n) = f.strip_prefix('D').and_then(number) {
            if n % 2 != 0 {
                return Err(unknown());
            }
            make_dihedral(n / 2)?
        } else if let Some(k) = f.strip_prefix('S').and_then(number) {
            make_symmetric(k)?
        } else if f == "Q8" {
            make_quaternion()?
        } else if f == "A4" {
            make_alternating4()?
        } else {
            return Err(unknown());
        };
        groups.push(g);
    }
    let mut it = groups.into_iter();
    let first = it.next().ok_or_else(unknown)?;
    it.try_fold(first, |acc, g| direct_product(&acc, &g))
}

/// Isomorphism invariants used to certify that catalog entries of equal
/// order are pairwise non-isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: usize,
    pub element_orders: Vec<usize>,
    pub center_size: usize,
    pub abelian: bool,
}

pub fn fingerprint(g: &FiniteGroup) -> Fingerprint {
    let mut element_orders = g.element_orders().to_vec();
    element_orders.sort_unstable();
    Fingerprint {
        order: g.order(),
        element_orders,
        center_size: g.center().len(),
        abelian: g.is_abelian(),
    }
}
