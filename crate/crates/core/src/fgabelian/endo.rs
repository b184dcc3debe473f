//! Finitely generated abelian groups `Z^r x Z_{m_1} x ... x Z_{m_k}` and
//! the endomorphisms of `Z x Z_m`.
//!
//! An endomorphism of `Z x Z_m` sends `(1, 0)` to `(n, b)` and `(0, 1)` to
//! `(0, a)`: nothing of finite order can land on a nonzero integer. So it is
//! the lower-triangular matrix `[[n, 0], [b, a]]`, acting by
//! `(u, v) -> (n u, b u + a v mod m)`, and it is invertible exactly when
//! `n = ±1` and `gcd(a, m) = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FgError {
    #[error("invalid group shape: {0}")]
    InvalidShape(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FgAbelian {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl FgAbelian {
    /// `torsion` must be invariant factors: each at least 2 and dividing
    /// the next.
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self, FgError> {
        if let Some(&m) = torsion.iter().find(|&&m| m < 2) {
            return Err(FgError::InvalidShape(format!("torsion modulus {m} < 2")));
        }
        if let Some(w) = torsion.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(FgError::InvalidShape(format!("{} does not divide {}", w[0], w[1])));
        }
        Ok(FgAbelian { free_rank, torsion })
    }

    /// `Z x Z_m`; for `m = 1` this is `Z`.
    pub fn z_times_zm(m: u64) -> Result<Self, FgError> {
        match m {
            0 => Err(FgError::InvalidShape("modulus 0".into())),
            1 => FgAbelian::new(1, vec![]),
            _ => FgAbelian::new(1, vec![m]),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<FgElement, FgError> {
        if free.len() != self.free_rank || torsion.len() != self.torsion.len() {
            return Err(FgError::ShapeMismatch(format!(
                "{} free and {} torsion coordinates for {self}",
                free.len(),
                torsion.len()
            )));
        }
        let torsion = torsion
            .iter()
            .zip(&self.torsion)
            .map(|(v, &m)| v.mod_floor(&BigInt::from(m)).to_u64().expect("residue below a u64 modulus"))
            .collect();
        Ok(FgElement { free, torsion, moduli: self.torsion.clone() })
    }

    pub fn zero(&self) -> FgElement {
        FgElement { free: vec![BigInt::zero(); self.free_rank], torsion: vec![0; self.torsion.len()], moduli: self.torsion.clone() }
    }
}

impl fmt::Display for FgAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = vec!["Z".to_string(); self.free_rank];
        parts.extend(self.torsion.iter().map(|m| format!("Z{m}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("x"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgElement {
    free: Vec<BigInt>,
    torsion: Vec<u64>,
    moduli: Vec<u64>,
}

impl FgElement {
    /// `(u, v mod m)` in `Z x Z_m`.
    pub fn pair(m: u64, u: impl Into<BigInt>, v: impl Into<BigInt>) -> Result<FgElement, FgError> {
        let g = FgAbelian::z_times_zm(m)?;
        let v = v.into();
        if m == 1 {
            return g.element(vec![u.into()], vec![]);
        }
        g.element(vec![u.into()], vec![v])
    }

    pub fn free(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    fn pair_parts(&self, m: u64) -> Result<(&BigInt, u64), FgError> {
        let shape_ok = self.free.len() == 1
            && match m {
                1 => self.moduli.is_empty(),
                _ => self.moduli == [m],
            };
        if !shape_ok {
            return Err(FgError::ShapeMismatch(format!("{self} is not an element of Z x Z{m}")));
        }
        Ok((&self.free[0], self.torsion.first().copied().unwrap_or(0)))
    }
}

/// `(u, v mod m)`
impl fmt::Display for FgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.free.iter().map(ToString::to_string).collect();
        parts.extend(self.torsion.iter().zip(&self.moduli).map(|(v, m)| format!("{v} mod {m}")));
        write!(f, "({})", parts.join(", "))
    }
}

/// The endomorphism `[[n, 0], [b, a]]` of `Z x Z_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EndoMatrix {
    m: u64,
    n: i64,
    b: u64,
    a: u64,
}

impl EndoMatrix {
    pub fn new(m: u64, n: i64, b: i64, a: i64) -> Result<Self, FgError> {
        if m == 0 {
            return Err(FgError::InvalidShape("modulus 0".into()));
        }
        let r = |x: i64| x.rem_euclid(m as i64) as u64;
        Ok(EndoMatrix { m, n, b: r(b), a: r(a) })
    }

    pub fn identity(m: u64) -> Result<Self, FgError> {
        EndoMatrix::new(m, 1, 0, 1)
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn apply(&self, x: &FgElement) -> Result<FgElement, FgError> {
        let (u, v) = x.pair_parts(self.m)?;
        let m = BigInt::from(self.m);
        let image = (BigInt::from(self.b) * u + BigInt::from(self.a) * BigInt::from(v)).mod_floor(&m);
        FgElement::pair(self.m, u * self.n, image)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &EndoMatrix) -> Result<EndoMatrix, FgError> {
        if self.m != other.m {
            return Err(FgError::ShapeMismatch(format!("moduli {} and {}", self.m, other.m)));
        }
        let m = self.m as i128;
        let b = (self.b as i128 * other.n as i128 + self.a as i128 * other.b as i128).rem_euclid(m);
        let a = (self.a as i128 * other.a as i128).rem_euclid(m);
        let n = self.n.checked_mul(other.n).ok_or_else(|| FgError::InvalidShape("free entry overflows".into()))?;
        Ok(EndoMatrix { m: self.m, n, b: b as u64, a: a as u64 })
    }

    pub fn is_automorphism(&self) -> bool {
        (self.n == 1 || self.n == -1) && self.a.gcd(&self.m) == 1
    }

    /// Identity iff `n = 1`, `a = 1` and `m | b`.
    pub fn is_identity(&self) -> bool {
        self.n == 1 && self.a == 1 % self.m && self.b == 0
    }

    pub fn inverse(&self) -> Option<EndoMatrix> {
        if !self.is_automorphism() {
            return None;
        }
        let m = self.m as i64;
        let a_inv = (1..=m).find(|&x| (x * self.a as i64) % m == 1 % m).expect("a is a unit mod m");
        let b = -(a_inv * self.b as i64 % m) * self.n;
        EndoMatrix::new(self.m, self.n, b, a_inv).ok()
    }

    /// Canonical order: `n = +1` before `n = -1`, then by `a`, then `b`.
    pub fn canonical_key(&self) -> (bool, u64, u64) {
        (self.n != 1, self.a, self.b)
    }
}

impl fmt::Display for EndoMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, 0], [{}, {}]] mod {}", self.n, self.b, self.a, self.m)
    }
}

/// All `2 m phi(m)` automorphisms of `Z x Z_m` in canonical order.
pub fn enumerate_aut(m: u64) -> Vec<EndoMatrix> {
    assert!(m >= 1, "modulus must be positive");
    let mut out = Vec::new();
    for n in [1, -1] {
        for a in (0..m).filter(|a| a.gcd(&m) == 1) {
            for b in 0..m {
                out.push(EndoMatrix { m, n, b, a });
            }
        }
    }
    out
}

pub fn stabilizer_in_aut(m: u64, s: &FgElement) -> Result<Vec<EndoMatrix>, FgError> {
    s.pair_parts(m)?;
    let mut out = Vec::new();
    for auto in enumerate_aut(m) {
        if &auto.apply(s)? == s {
            out.push(auto);
        }
    }
    Ok(out)
}

pub fn has_trivial_stabilizer(m: u64, s: &FgElement) -> Result<bool, FgError> {
    Ok(stabilizer_in_aut(m, s)?.iter().all(EndoMatrix::is_identity))
}
