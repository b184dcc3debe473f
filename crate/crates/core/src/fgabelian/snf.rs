//! Smith normal form over the integers, with the transforms kept.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::Ragged { row: r, len: row.len(), expected: cols });
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Whitespace-separated integers, one row per line; blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, MatrixError> {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<BigInt>().map_err(|_| MatrixError::Syntax {
                        line: i + 1,
                        message: format!("not an integer: {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(first) = rows.first() {
                if row.len() != first.len() {
                    return Err(MatrixError::Syntax {
                        line: i + 1,
                        message: format!("{} entries, expected {}", row.len(), first.len()),
                    });
                }
            }
            rows.push(row);
        }
        IntMatrix::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    *out.at(i, j) += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum()).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * m.get(n - 1, n - 1)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row dst += q * row src
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = q * self.get(src, j);
            *self.at(dst, j) += v;
        }
    }

    /// col dst += q * col src
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = q * self.get(i, src);
            *self.at(i, dst) += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `U * A * V = D` with `D` diagonal, `d_1 | d_2 | ...`, and `U`, `V`
/// unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn invariants(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }

    pub fn rank(&self) -> usize {
        self.invariants().iter().filter(|d| !d.is_zero()).count()
    }
}

struct Reducer {
    u: IntMatrix,
    d: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.add_row(dst, src, q);
        self.u.add_row(dst, src, q);
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.add_col(dst, src, q);
        self.v.add_col(dst, src, q);
    }

    fn smallest_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let d = &self.d;
        (t..d.rows)
            .flat_map(|i| (t..d.cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !d.get(i, j).is_zero())
            .min_by(|&(a, b), &(c, e)| d.get(a, b).abs().cmp(&d.get(c, e).abs()))
    }

    /// Reduces row and column `t`; false if some remainder survived.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.d.rows {
            let q = -(self.d.get(i, t) / self.d.get(t, t));
            if !q.is_zero() {
                self.add_row(i, t, &q);
            }
            clean &= self.d.get(i, t).is_zero();
        }
        for j in t + 1..self.d.cols {
            let q = -(self.d.get(t, j) / self.d.get(t, t));
            if !q.is_zero() {
                self.add_col(j, t, &q);
            }
            clean &= self.d.get(t, j).is_zero();
        }
        clean
    }

    fn run(&mut self) {
        for t in 0..self.d.rows.min(self.d.cols) {
            loop {
                let Some((pi, pj)) = self.smallest_nonzero(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                if !self.clear_cross(t) {
                    continue;
                }
                let pivot = self.d.get(t, t).clone();
                let offender = (t + 1..self.d.rows)
                    .find(|&i| (t + 1..self.d.cols).any(|j| !self.d.get(i, j).is_multiple_of(&pivot)));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.d.get(t, t).is_negative() {
                self.d.negate_row(t);
                self.u.negate_row(t);
            }
        }
    }
}

pub fn snf(a: &IntMatrix) -> Smith {
    let mut r = Reducer { u: IntMatrix::identity(a.rows), d: a.clone(), v: IntMatrix::identity(a.cols) };
    r.run();
    let smith = Smith { u: r.u, d: r.d, v: r.v };
    if let Err(why) = verify(a, &smith) {
        panic!("Smith normal form postcondition violated: {why}");
    }
    smith
}

/// Checks every postcondition of a Smith decomposition of `a`.
pub fn verify(a: &IntMatrix, s: &Smith) -> Result<(), String> {
    if s.u.mul(a).mul(&s.v) != s.d {
        return Err("U*A*V != D".into());
    }
    if !s.d.is_diagonal() {
        return Err("D is not diagonal".into());
    }
    let diag = s.d.diagonal();
    if diag.iter().any(Signed::is_negative) {
        return Err("negative invariant factor".into());
    }
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
        if !ok {
            return Err(format!("{} does not divide {}", w[0], w[1]));
        }
    }
    for (name, m) in [("U", &s.u), ("V", &s.v)] {
        if m.determinant().abs() != BigInt::one() {
            return Err(format!("{name} is not unimodular"));
        }
    }
    Ok(())
}

/// Solutions of `A x = b` over the integers: a particular solution plus a
/// basis of the kernel lattice, or `None` if there is none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSolutions {
    pub particular: Vec<BigInt>,
    pub kernel: Vec<Vec<BigInt>>,
}

pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<IntegerSolutions> {
    assert_eq!(a.rows, b.len(), "dimension mismatch");
    let s = snf(a);
    let c = s.u.mul_vec(b);
    let mut z = vec![BigInt::zero(); a.cols];
    let mut free = Vec::new();
    for (i, ci) in c.iter().enumerate() {
        let d = if i < a.cols { s.d.get(i, i).clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !ci.is_zero() {
                return None;
            }
        } else {
            let (q, r) = ci.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        }
    }
    for i in 0..a.cols {
        if i >= a.rows || s.d.get(i, i).is_zero() {
            free.push(i);
        }
    }
    let column = |j: usize| (0..a.cols).map(|i| s.v.get(i, j).clone()).collect::<Vec<_>>();
    Some(IntegerSolutions { particular: s.v.mul_vec(&z), kernel: free.into_iter().map(column).collect() })
}

/// All residues `y` mod `m` with `k_j * y = c_j (mod m)` for every pair.
pub fn solve_congruences(eqs: &[(BigInt, BigInt)], m: &BigInt) -> Vec<BigInt> {
    assert!(m.is_positive());
    let p = eqs.len();
    if p == 0 {
        return num_iter(m);
    }
    // unknowns (y, t_1, ..., t_p): k_j y + m t_j = c_j
    let mut a = IntMatrix::zeros(p, p + 1);
    for (j, (k, _)) in eqs.iter().enumerate() {
        a.set(j, 0, k.clone());
        a.set(j, j + 1, m.clone());
    }
    let b: Vec<BigInt> = eqs.iter().map(|(_, c)| c.clone()).collect();
    let Some(sol) = solve_integer(&a, &b) else {
        return Vec::new();
    };
    let step = sol.kernel.iter().fold(m.clone(), |g, v| g.gcd(&v[0]));
    let start = sol.particular[0].mod_floor(&step);
    let mut out: Vec<BigInt> = num_iter(&(m / &step)).into_iter().map(|i| (&start + i * &step).mod_floor(m)).collect();
    out.sort();
    out
}

fn num_iter(m: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut i = BigInt::zero();
    while &i < m {
        out.push(i.clone());
        i += 1;
    }
    out
}
