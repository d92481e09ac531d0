//! Dense linear algebra over prime fields `F_p`.
//!
//! Matrices act on column vectors. Subspaces are stored as reduced row echelon
//! bases (one basis vector per row).

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// A validated odd-or-two prime below 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, self.0 - 2)
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn reduce(self, a: i64) -> u64 {
        a.rem_euclid(self.0 as i64) as u64
    }

    pub fn random_nonzero<R: Rng + ?Sized>(self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.0)
    }

    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut k = 3;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} mod {}]", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            write!(f, "\n  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row-major entries, reducing each mod p.
    pub fn from_rows(p: Prime, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Matrix {
            p,
            rows,
            cols,
            data: entries.iter().map(|&e| p.reduce(e)).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(p: Prime, rows: usize, cols: usize, rng: &mut R) -> Self {
        Matrix {
            p,
            rows,
            cols,
            data: (0..rows * cols).map(|_| p.random(rng)).collect(),
        }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p.value();
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let p = self.p.value();
        let mut out = Matrix::zeros(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            let orow = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b) % p;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(&other.data) {
            *o = self.p.add(*o, b);
        }
        out
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let mut out = self.clone();
        for o in out.data.iter_mut() {
            *o = self.p.mul(*o, c % self.p.value());
        }
        out
    }

    /// Stacks rows of `self` above rows of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            out.row_mut(r)[self.cols..].copy_from_slice(other.row(r));
        }
        out
    }

    /// Selects the given rows.
    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.p, idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            out.row_mut(i).copy_from_slice(self.row(r));
        }
        out
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(pr) = (lead..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            if pr != lead {
                for k in 0..self.cols {
                    self.data.swap(pr * self.cols + k, lead * self.cols + k);
                }
            }
            let inv = p.inv(self.get(lead, c));
            for v in self.row_mut(lead) {
                *v = p.mul(*v, inv);
            }
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let f = self.get(r, c);
                if f == 0 {
                    continue;
                }
                for k in c..self.cols {
                    let sub = p.mul(f, self.data[lead * self.cols + k]);
                    self.data[r * self.cols + k] = p.sub(self.data[r * self.cols + k], sub);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per row.
    pub fn kernel(&self) -> Matrix {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.p, free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            out.set(i, f, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(i, pc, self.p.neg(m.get(r, f)));
            }
        }
        out
    }

    /// Applies the map to each row vector: rows of the result are `self * v`.
    pub fn apply_to_rows(&self, vectors: &Matrix) -> Matrix {
        vectors.mul(&self.transpose())
    }

    /// Solves `self * x = b` for a column vector `b`; `None` if inconsistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let col = Matrix {
            p: self.p,
            rows: self.rows,
            cols: 1,
            data: b.to_vec(),
        };
        let mut aug = self.hstack(&col);
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// A linear subspace of `F_p^n`, kept as an RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient(), self.basis)
    }
}

impl Subspace {
    pub fn zero(p: Prime, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(p, 0, ambient),
        }
    }

    pub fn full(p: Prime, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(p, ambient),
        }
    }

    /// Span of the rows of `m`.
    pub fn span(m: &Matrix) -> Self {
        let mut b = m.clone();
        let r = b.rref().len();
        let idx: Vec<usize> = (0..r).collect();
        Subspace {
            basis: b.select_rows(&idx),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn prime(&self) -> Prime {
        self.basis.prime()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| {
                self.basis
                    .row(r)
                    .iter()
                    .position(|&x| x != 0)
                    .expect("echelon basis row is nonzero")
            })
            .collect()
    }

    /// Coordinates of `v` (assumed to lie in the subspace) in the echelon basis.
    pub fn coordinates(&self, v: &[u64]) -> Vec<u64> {
        self.pivots().into_iter().map(|c| v[c]).collect()
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        let coords = self.coordinates(v);
        let p = self.prime();
        (0..self.ambient()).all(|c| {
            let mut acc = 0;
            for (r, &x) in coords.iter().enumerate() {
                acc = p.add(acc, p.mul(x, self.basis.get(r, c)));
            }
            acc == v[c]
        })
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&self.basis.vstack(&other.basis))
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    /// Linear functionals (rows) whose common kernel is this subspace.
    pub fn annihilator(&self) -> Matrix {
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let ann = self.annihilator().vstack(&other.annihilator());
        Subspace::span(&ann.kernel())
    }

    /// Image under a linear map (matrix acting on columns).
    pub fn image(&self, map: &Matrix) -> Subspace {
        Subspace::span(&map.apply_to_rows(&self.basis))
    }

    /// Vectors completing this subspace's basis to a basis of `outer`,
    /// chosen deterministically among `outer`'s basis rows.
    pub fn complement_in(&self, outer: &Subspace) -> Matrix {
        let mut chosen: Vec<usize> = Vec::new();
        let mut acc = self.basis.clone();
        let mut rank = self.dim();
        for r in 0..outer.dim() {
            let cand = acc.vstack(&outer.basis.select_rows(&[r]));
            let nr = cand.rank();
            if nr > rank {
                acc = cand;
                rank = nr;
                chosen.push(r);
            }
        }
        outer.basis.select_rows(&chosen)
    }
}

/// Enumerates all `k`-dimensional subspaces of `F_p^n` as RREF row matrices.
///
/// Visits subspaces in a fixed order; `visit` returns `false` to stop early.
/// Returns `false` if stopped.
pub fn for_each_subspace<F>(p: Prime, n: usize, k: usize, visit: &mut F) -> bool
where
    F: FnMut(&Matrix) -> bool,
{
    if k > n {
        return true;
    }
    let mut pivots = Vec::with_capacity(k);
    for_each_pivot_set(n, k, 0, &mut pivots, &mut |piv| {
        // free slots: (row r, column c) with c > piv[r] and c not a pivot
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((piv[r] + 1)..n).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut m = Matrix::zeros(p, k, n);
        for (r, &c) in piv.iter().enumerate() {
            m.set(r, c, 1);
        }
        let mut digits = vec![0u64; slots.len()];
        loop {
            for (&(r, c), &d) in slots.iter().zip(&digits) {
                m.set(r, c, d);
            }
            if !visit(&m) {
                return false;
            }
            // odometer increment
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return true;
                }
                digits[i] += 1;
                if digits[i] < p.value() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    })
}

fn for_each_pivot_set<F>(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut F) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    if cur.len() == k {
        return f(cur);
    }
    let remaining = k - cur.len();
    for c in start..=(n - remaining) {
        cur.push(c);
        let go = for_each_pivot_set(n, k, c + 1, cur, f);
        cur.pop();
        if !go {
            return false;
        }
    }
    true
}

/// Number of `k`-dimensional subspaces of `F_p^n` (Gaussian binomial),
/// saturating at `u128::MAX`.
pub fn gaussian_binomial(p: u64, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    let p = p as u128;
    for i in 0..k {
        let a = p.checked_pow((n - i) as u32).map(|x| x - 1);
        let b = p.checked_pow((i + 1) as u32).map(|x| x - 1);
        match (a.and_then(|a| num.checked_mul(a)), b.and_then(|b| den.checked_mul(b))) {
            (Some(n2), Some(d2)) => {
                num = n2;
                den = d2;
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
            _ => return u128::MAX,
        }
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
