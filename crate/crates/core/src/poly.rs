//! Univariate polynomials over `F_p`: characteristic polynomials and
//! distinct irreducible factors (distinct-degree plus Cantor–Zassenhaus).

use rand::Rng;

use crate::field::{Matrix, Prime};

/// Coefficients from the constant term upwards, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: Prime,
    c: Vec<u64>,
}

impl Poly {
    pub fn new(p: Prime, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p.value();
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { p, c }
    }

    pub fn zero(p: Prime) -> Self {
        Poly { p, c: Vec::new() }
    }

    pub fn one(p: Prime) -> Self {
        Poly::new(p, vec![1])
    }

    /// The monomial `x`.
    pub fn x(p: Prime) -> Self {
        Poly::new(p, vec![0, 1])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                self.p.add(a, b)
            })
            .collect();
        Poly::new(self.p, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(self.p.value() - 1))
    }

    pub fn scale(&self, k: u64) -> Poly {
        Poly::new(
            self.p,
            self.c.iter().map(|&a| self.p.mul(a, k % self.p.value())).collect(),
        )
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = self.p.add(c[i + j], self.p.mul(a, b));
            }
        }
        Poly::new(self.p, c)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let mut r = self.c.clone();
        let dd = d.deg();
        if r.len() <= dd {
            return (Poly::zero(p), self.clone());
        }
        let inv = p.inv(d.c[dd]);
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let coef = p.mul(r[i], inv);
            if coef == 0 {
                continue;
            }
            q[i - dd] = coef;
            for (j, &b) in d.c.iter().enumerate() {
                let k = i - dd + j;
                r[k] = p.sub(r[k], p.mul(coef, b));
            }
        }
        (Poly::new(p, q), Poly::new(p, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Poly {
        match self.c.last() {
            None => self.clone(),
            Some(&lead) => self.scale(self.p.inv(lead)),
        }
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| self.p.mul(a, i as u64 % self.p.value()))
            .collect();
        Poly::new(self.p, c)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Evaluates at a square matrix (Horner).
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let n = a.rows();
        let mut acc = Matrix::zeros(self.p, n, n);
        for &coef in self.c.iter().rev() {
            acc = acc.mul(a).add(&Matrix::identity(self.p, n).scale(coef));
        }
        acc
    }
}

/// Characteristic polynomial `det(xI - A)` via Hessenberg reduction.
pub fn charpoly(a: &Matrix) -> Poly {
    let p = a.prime();
    let n = a.rows();
    assert_eq!(n, a.cols(), "characteristic polynomial needs a square matrix");
    let mut h: Vec<Vec<u64>> = (0..n).map(|r| a.row(r).to_vec()).collect();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = p.inv(h[m][m - 1]);
        for i in (m + 1)..n {
            let u = p.mul(h[i][m - 1], inv);
            if u == 0 {
                continue;
            }
            let pivot_row = h[m].clone();
            for (x, &y) in h[i].iter_mut().zip(&pivot_row) {
                *x = p.sub(*x, p.mul(u, y));
            }
            for row in h.iter_mut() {
                let t = p.mul(u, row[i]);
                row[m] = p.add(row[m], t);
            }
        }
    }
    let mut polys: Vec<Poly> = vec![Poly::one(p)];
    for m in 1..=n {
        let lin = Poly::new(p, vec![p.neg(h[m - 1][m - 1]), 1]);
        let mut pm = lin.mul(&polys[m - 1]);
        let mut t = 1u64;
        for i in (1..m).rev() {
            t = p.mul(t, h[i][i - 1]);
            let coef = p.mul(t, h[i - 1][m - 1]);
            pm = pm.sub(&polys[i - 1].scale(coef));
        }
        polys.push(pm);
    }
    polys.pop().expect("at least the constant polynomial")
}

/// The distinct monic irreducible factors of `f`, sorted by coefficients.
/// For `p = 2`, equal-degree factors may stay merged.
pub fn distinct_irreducible_factors<R: Rng + ?Sized>(f: &Poly, rng: &mut R) -> Vec<Poly> {
    let mut out = Vec::new();
    collect_factors(&f.monic(), rng, &mut out);
    out.sort_by(|a, b| (a.c.len(), &a.c).cmp(&(b.c.len(), &b.c)));
    out.dedup();
    out
}

fn collect_factors<R: Rng + ?Sized>(f: &Poly, rng: &mut R, out: &mut Vec<Poly>) {
    if f.deg() == 0 {
        return;
    }
    let p = f.p;
    let c = f.gcd(&f.derivative());
    let w = f.divrem(&c).0.monic();
    if w.deg() > 0 {
        for (g, d) in distinct_degree(&w) {
            equal_degree(&g, d, rng, out);
        }
    }
    // what remains has only factors of multiplicity divisible by p
    let mut rest = c;
    loop {
        let g = rest.gcd(&w);
        if g.deg() == 0 {
            break;
        }
        rest = rest.divrem(&g).0;
    }
    if rest.deg() > 0 {
        let q = p.value() as usize;
        let root: Vec<u64> = rest.c.iter().step_by(q).copied().collect();
        collect_factors(&Poly::new(p, root).monic(), rng, out);
    }
}

fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut w = f.clone();
    let x = Poly::x(p);
    let mut h = x.rem(&w);
    let mut d = 0;
    while w.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(p.value() as u128, &w);
        let g = w.gcd(&h.sub(&x));
        if g.deg() > 0 {
            w = w.divrem(&g).0;
            h = h.rem(&w);
            out.push((g, d));
        }
    }
    if w.deg() > 0 {
        let dw = w.deg();
        out.push((w.monic(), dw));
    }
    out
}

fn equal_degree<R: Rng + ?Sized>(g: &Poly, d: usize, rng: &mut R, out: &mut Vec<Poly>) {
    let n = g.deg();
    if n <= d || g.p.value() == 2 {
        out.push(g.monic());
        return;
    }
    let p = g.p;
    loop {
        let a = Poly::new(p, (0..n).map(|_| p.random(rng)).collect());
        if a.deg() == 0 {
            continue;
        }
        // a^((p^d - 1)/2) = (a · a^p · ... · a^{p^{d-1}})^((p-1)/2)
        let mut norm = Poly::one(p);
        let mut frob = a.rem(g);
        for _ in 0..d {
            norm = norm.mul(&frob).rem(g);
            frob = frob.powmod(p.value() as u128, g);
        }
        let b = norm.powmod(((p.value() - 1) / 2) as u128, g).sub(&Poly::one(p));
        let h = g.gcd(&b);
        if h.deg() > 0 && h.deg() < n {
            let other = g.divrem(&h).0;
            equal_degree(&h, d, rng, out);
            equal_degree(&other, d, rng, out);
            return;
        }
    }
}
