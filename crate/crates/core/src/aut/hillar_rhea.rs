//! Closed-form `|Aut(G)|` for a finite abelian p-group
//! `G = Z_{p^e_1} x ... x Z_{p^e_t}` with `e_1 <= ... <= e_t`.
//!
//! With `d_i = max{j : e_j = e_i}` and `c_i = min{j : e_j = e_i}` (1-based),
//!
//! ```text
//! |Aut(G)| = prod_{i=1..t} (p^d_i - p^(i-1)) * p^(e_i (t - d_i) + (e_i - 1)(t - c_i + 1))
//! ```

use num_bigint::BigUint;
use num_traits::One;

use super::AutError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianPShape {
    p: u64,
    exponents: Vec<u32>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl AbelianPShape {
    pub fn new(p: u64, exponents: Vec<u32>) -> Result<Self, AutError> {
        if !is_prime(p) {
            return Err(AutError::InvalidShape(format!("{p} is not prime")));
        }
        if exponents.is_empty() {
            return Err(AutError::InvalidShape("no exponents".into()));
        }
        if exponents.contains(&0) {
            return Err(AutError::InvalidShape("exponents must be positive".into()));
        }
        if exponents.windows(2).any(|w| w[0] > w[1]) {
            return Err(AutError::InvalidShape("exponents must be nondecreasing".into()));
        }
        Ok(AbelianPShape { p, exponents })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// The cyclic factors `p^e_i`, suitable for `make_abelian`.
    pub fn factors(&self) -> Vec<usize> {
        self.exponents.iter().map(|&e| self.p.pow(e) as usize).collect()
    }

    pub fn group_order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.exponents.iter().sum::<u32>())
    }

    /// Every shape with `p^(sum e_i) <= max_order`, by total exponent and
    /// then lexicographically.
    pub fn all_up_to(p: u64, max_order: u64) -> Vec<AbelianPShape> {
        fn partitions(total: u32, min: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if total == 0 {
                out.push(acc.clone());
                return;
            }
            for part in min..=total {
                acc.push(part);
                partitions(total - part, part, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        let mut total = 1;
        while p.checked_pow(total).is_some_and(|o| o <= max_order) {
            let mut parts = Vec::new();
            partitions(total, 1, &mut Vec::new(), &mut parts);
            parts.sort();
            out.extend(parts.into_iter().map(|exponents| AbelianPShape { p, exponents }));
            total += 1;
        }
        out
    }
}

pub fn hillar_rhea_order(shape: &AbelianPShape) -> BigUint {
    let p = BigUint::from(shape.p);
    let e = &shape.exponents;
    let t = e.len() as u32;
    let mut total = BigUint::one();
    for i in 1..=t {
        let ei = e[(i - 1) as usize];
        let d = (1..=t).filter(|&j| e[(j - 1) as usize] == ei).max().expect("i itself");
        let c = (1..=t).filter(|&j| e[(j - 1) as usize] == ei).min().expect("i itself");
        let factor = p.pow(d) - p.pow(i - 1);
        let exponent = ei * (t - d) + (ei - 1) * (t - c + 1);
        total *= factor * p.pow(exponent);
    }
    total
}
