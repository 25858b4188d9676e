//! Exact arithmetic in GF(p) and dense matrix operations over it.
//!
//! Matrices are stored row-major with entries kept reduced in `[0, p)`.
//! Row reduction, ranks, kernels and solutions are echelon-normalized so
//! every output is deterministic. Matrix products skip zero entries of the
//! sparser factor, which makes products with permutation-like matrices
//! (the common case for group generators) run in quadratic time.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::Error;
use crate::Result;

/// A prime field GF(p), validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::ModulusTooLarge(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, v: u64) -> u64 {
        v % self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero mod p.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn element(&self, value: u64) -> FieldElement {
        FieldElement {
            value: self.reduce(value),
            modulus: self.p,
        }
    }
}

/// A residue in GF(p) together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldElement {
    pub value: u64,
    pub modulus: u64,
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// C(d, a) mod p computed digit-by-digit in base p, so the convention
/// C(d, a) = 0 for a > d and the divided-power normalization hold without
/// ever forming a factorial.
pub fn binom_mod_p(d: u64, a: u64, p: u64) -> Result<FieldElement> {
    let field = PrimeField::new(p)?;
    let mut d = d;
    let mut a = a;
    let mut acc = 1u64;
    while a > 0 || d > 0 {
        let dd = d % p;
        let ad = a % p;
        acc = field.mul(acc, binom_digit(dd, ad, &field));
        if acc == 0 {
            return Ok(field.element(0));
        }
        d /= p;
        a /= p;
    }
    Ok(field.element(acc))
}

/// C(d, a) mod p for digits d, a < p. Numerator and denominator factors all
/// lie in (0, p), so the denominator is invertible.
fn binom_digit(d: u64, a: u64, field: &PrimeField) -> u64 {
    if a > d {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 1..=a {
        num = field.mul(num, d - a + i);
        den = field.mul(den, i);
    }
    if a == 0 {
        return 1;
    }
    field.mul(num, field.inv(den))
}

/// Dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Index<(usize, usize)> for Matrix {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} mod {} [", self.rows, self.cols, self.field.p)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let data = rows
            .into_iter()
            .flatten()
            .map(|v| field.reduce(v))
            .collect();
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_fn(field: PrimeField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = field.reduce(f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[u64]) {
        debug_assert_eq!(col.len(), self.rows);
        for (i, &v) in col.iter().enumerate() {
            self[(i, j)] = v;
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn count_nonzero(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0).count()
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols || self.field != other.field {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = self.field.add(*a, b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = self.field.sub(*a, b);
        }
        Ok(out)
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let c = self.field.reduce(c);
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = self.field.mul(*a, c);
        }
        out
    }

    /// Product `self * other`, choosing the loop orientation so the sparser
    /// factor drives the iteration.
    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.count_nonzero() <= other.count_nonzero() {
            Ok(self.matmul_left_driven(other))
        } else {
            Ok(other
                .transpose()
                .matmul_left_driven(&self.transpose())
                .transpose())
        }
    }

    fn matmul_left_driven(&self, other: &Matrix) -> Matrix {
        let p = self.field.p;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        // Number of products (p-1)^2 that fit in a u64 accumulator.
        let budget = (u64::MAX / ((p - 1) * (p - 1))).max(1);
        for i in 0..self.rows {
            let mut pending = 0u64;
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                pending += 1;
                let reduce_now = pending >= budget;
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(orow) {
                    *o += a * b;
                    if reduce_now {
                        *o %= p;
                    }
                }
                if reduce_now {
                    pending = 0;
                }
            }
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for o in out_row.iter_mut() {
                *o %= p;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "matrix {}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let p = self.field.p;
        let budget = (u64::MAX / ((p - 1) * (p - 1))).max(1);
        let mut out = vec![0u64; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u64;
            let mut pending = 0u64;
            for (a, &b) in self.row(i).iter().zip(v) {
                if *a == 0 || b == 0 {
                    continue;
                }
                acc += a * b;
                pending += 1;
                if pending >= budget {
                    acc %= p;
                    pending = 0;
                }
            }
            out[i] = acc % p;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        self.data
            .iter()
            .enumerate()
            .all(|(k, &v)| v == u64::from(k / self.cols == k % self.cols))
    }

    pub fn trace(&self) -> u64 {
        debug_assert_eq!(self.rows, self.cols);
        let mut t = 0;
        for i in 0..self.rows {
            t = self.field.add(t, self[(i, i)]);
        }
        t
    }

    /// Row-reduced echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let f = m.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&i| m[(i, col)] != 0) else {
                continue;
            };
            if piv != row {
                for j in 0..m.cols {
                    m.data.swap(row * m.cols + j, piv * m.cols + j);
                }
            }
            let inv = f.inv(m[(row, col)]);
            for j in col..m.cols {
                m[(row, j)] = f.mul(m[(row, j)], inv);
            }
            for i in 0..m.rows {
                if i == row || m[(i, col)] == 0 {
                    continue;
                }
                let c = m[(i, col)];
                for j in col..m.cols {
                    let sub = f.mul(c, m[(row, j)]);
                    m[(i, j)] = f.sub(m[(i, j)], sub);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Echelon-normalized basis of the right null space: one vector per free
    /// column, with a 1 in that free coordinate.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref();
        let f = self.field;
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &c in &pivots {
                s[c] = true;
            }
            s
        };
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r[(i, free)]);
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = b` in echelon-canonical form (free
    /// variables zero), or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "system {}x{} with rhs of length {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = self.field.reduce(b[i]);
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u64; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(i, self.cols)];
        }
        Ok(Some(x))
    }
}
