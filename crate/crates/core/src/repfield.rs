//! Concrete representations over prime fields.
//!
//! A representation stores one matrix per arrow; the matrix of `α: i -> j`
//! has shape `d_j × d_i` and acts on column vectors.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{for_each_subspace, Matrix, Prime, Subspace};
use crate::layers::{self, dominance_leq, SemisimpleSequence, DEFAULT_SEQUENCE_CAP};
use crate::poly::{charpoly, distinct_irreducible_factors};
use crate::quiver::{DimVector, Path, TruncatedAlgebra};
use crate::rng::{rng_for, tags};

/// Default node budget for filtration searches.
pub const DEFAULT_SEARCH_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    algebra: TruncatedAlgebra,
    prime: Prime,
    dim: DimVector,
    maps: Vec<Matrix>,
}

/// Per-vertex subspaces of a representation.
pub type Graded = Vec<Subspace>;

impl Representation {
    /// Validates shapes and the truncation `J^{L+1} = 0`.
    pub fn new(algebra: TruncatedAlgebra, prime: Prime, dim: DimVector, maps: Vec<Matrix>) -> Result<Self> {
        dim.check_len(algebra.vertex_count())?;
        let q = algebra.quiver();
        if maps.len() != q.arrows().len() {
            return Err(Error::SizeMismatch {
                expected: q.arrows().len(),
                found: maps.len(),
            });
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.prime() != prime {
                return Err(Error::AlgebraMismatch);
            }
            let (r, c) = (dim[a.target] as usize, dim[a.source] as usize);
            if m.rows() != r || m.cols() != c {
                return Err(Error::SizeMismatch {
                    expected: r * c,
                    found: m.rows() * m.cols(),
                });
            }
        }
        let rep = Representation {
            algebra,
            prime,
            dim,
            maps,
        };
        let series = rep.radical_series_to(rep.algebra.loewy_bound() + 1);
        if series.last().is_some_and(|g| g.iter().any(|s| s.dim() > 0)) {
            return Err(Error::WrongLoewyBound {
                expected: rep.algebra.loewy_bound(),
                found: rep.algebra.loewy_bound() + 1,
            });
        }
        Ok(rep)
    }

    pub(crate) fn new_unchecked(algebra: TruncatedAlgebra, prime: Prime, dim: DimVector, maps: Vec<Matrix>) -> Self {
        Representation {
            algebra,
            prime,
            dim,
            maps,
        }
    }

    /// All arrows act by zero.
    pub fn semisimple(algebra: &TruncatedAlgebra, prime: Prime, dim: &DimVector) -> Self {
        let maps = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(prime, dim[a.target] as usize, dim[a.source] as usize))
            .collect();
        Representation::new_unchecked(algebra.clone(), prime, dim.clone(), maps)
    }

    pub fn simple(algebra: &TruncatedAlgebra, prime: Prime, v: usize) -> Self {
        Self::semisimple(algebra, prime, &DimVector::unit(algebra.vertex_count(), v))
    }

    /// Uniform random arrow matrices; fails if the draw violates truncation.
    pub fn random<R: Rng + ?Sized>(
        algebra: &TruncatedAlgebra,
        prime: Prime,
        dim: &DimVector,
        rng: &mut R,
    ) -> Result<Self> {
        let maps = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::random(prime, dim[a.target] as usize, dim[a.source] as usize, rng))
            .collect();
        Representation::new(algebra.clone(), prime, dim.clone(), maps)
    }

    pub fn algebra(&self) -> &TruncatedAlgebra {
        &self.algebra
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    fn n(&self) -> usize {
        self.dim.len()
    }

    pub fn full(&self) -> Graded {
        self.dim
            .iter()
            .map(|&d| Subspace::full(self.prime, d as usize))
            .collect()
    }

    pub fn zero_sub(&self) -> Graded {
        self.dim
            .iter()
            .map(|&d| Subspace::zero(self.prime, d as usize))
            .collect()
    }

    /// `J·U = Σ_α x_α(U_{s(α)})`, vertex by vertex.
    pub fn radical_of(&self, u: &Graded) -> Graded {
        let mut out = self.zero_sub();
        for (a, m) in self.algebra.quiver().arrows().iter().zip(&self.maps) {
            if u[a.source].dim() == 0 || m.rows() == 0 {
                continue;
            }
            let img = u[a.source].image(m);
            out[a.target] = out[a.target].sum(&img);
        }
        out
    }

    /// `{m : x_α m ∈ U for all α}`, vertex by vertex.
    pub fn preimage_of(&self, u: &Graded) -> Graded {
        let q = self.algebra.quiver();
        (0..self.n())
            .map(|v| {
                let dv = self.dim[v] as usize;
                let mut f = Matrix::zeros(self.prime, 0, dv);
                for a in q.arrows_from(v) {
                    let t = q.arrow(a).target;
                    let ann = u[t].annihilator();
                    if ann.rows() > 0 {
                        f = f.vstack(&ann.mul(&self.maps[a]));
                    }
                }
                Subspace::span(&f.kernel())
            })
            .collect()
    }

    fn radical_series_to(&self, depth: usize) -> Vec<Graded> {
        let mut series = vec![self.full()];
        for _ in 0..depth {
            let next = self.radical_of(series.last().expect("nonempty"));
            series.push(next);
        }
        series
    }

    /// `J^0 M ⊇ J^1 M ⊇ ... ⊇ J^{L+1} M`.
    pub fn radical_series(&self) -> Vec<Graded> {
        self.radical_series_to(self.algebra.loewy_bound() + 1)
    }

    /// `0 = soc^0 ⊆ soc^1 ⊆ ... ⊆ soc^{L+1} = M`, with `soc^k = ann J^k`.
    pub fn socle_series(&self) -> Vec<Graded> {
        let mut series = vec![self.zero_sub()];
        for _ in 0..=self.algebra.loewy_bound() {
            let next = self.preimage_of(series.last().expect("nonempty"));
            series.push(next);
        }
        series
    }

    pub fn radical_layering(&self) -> SemisimpleSequence {
        let s = self.radical_series();
        let layers = s
            .windows(2)
            .map(|w| graded_dim(&w[0]).sub(&graded_dim(&w[1])))
            .collect();
        SemisimpleSequence::new(layers).expect("layers share the vertex count")
    }

    pub fn socle_layering(&self) -> SemisimpleSequence {
        let s = self.socle_series();
        let layers = s
            .windows(2)
            .map(|w| graded_dim(&w[1]).sub(&graded_dim(&w[0])))
            .collect();
        SemisimpleSequence::new(layers).expect("layers share the vertex count")
    }

    /// Matrix of a path acting from its start vertex to its end vertex.
    pub fn path_matrix(&self, path: &Path) -> Result<Matrix> {
        let q = self.algebra.quiver();
        if !path.is_valid(q) {
            return Err(Error::InvalidQuiver("path is not composable".into()));
        }
        let mut m = Matrix::identity(self.prime, self.dim[path.start] as usize);
        for &a in &path.arrows {
            m = self.maps[a].mul(&m);
        }
        Ok(m)
    }

    /// Nullity of the path acting on the space at its start vertex.
    pub fn path_nullity(&self, path: &Path) -> Result<usize> {
        let m = self.path_matrix(path)?;
        Ok(self.dim[path.start] as usize - m.rank())
    }

    pub fn is_subrepresentation(&self, u: &Graded) -> bool {
        let j = self.radical_of(u);
        j.iter().zip(u).all(|(a, b)| b.contains(a))
    }

    /// The subrepresentation on `u`, in the echelon bases of its spaces.
    pub fn restrict(&self, u: &Graded) -> Representation {
        debug_assert!(self.is_subrepresentation(u));
        let q = self.algebra.quiver();
        let maps = q
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| {
                let src = &u[a.source];
                let tgt = &u[a.target];
                let images = m.apply_to_rows(src.basis());
                let mut out = Matrix::zeros(self.prime, tgt.dim(), src.dim());
                for j in 0..src.dim() {
                    for (i, c) in tgt.coordinates(images.row(j)).into_iter().enumerate() {
                        out.set(i, j, c);
                    }
                }
                out
            })
            .collect();
        Representation::new_unchecked(self.algebra.clone(), self.prime, graded_dim(u), maps)
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.algebra != other.algebra || self.prime != other.prime {
            return Err(Error::AlgebraMismatch);
        }
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| block_diag(a, b))
            .collect();
        Ok(Representation::new_unchecked(
            self.algebra.clone(),
            self.prime,
            self.dim.add(&other.dim),
            maps,
        ))
    }

    /// The same module written in new bases: `x_α ↦ g_t x_α g_s^{-1}`.
    pub fn change_basis(&self, g: &[Matrix]) -> Result<Representation> {
        let q = self.algebra.quiver();
        let inverses = g
            .iter()
            .map(invert)
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::AlgebraMismatch)?;
        let maps = q
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| g[a.target].mul(m).mul(&inverses[a.source]))
            .collect();
        Ok(Representation::new_unchecked(
            self.algebra.clone(),
            self.prime,
            self.dim.clone(),
            maps,
        ))
    }
}

pub fn graded_dim(u: &Graded) -> DimVector {
    DimVector::new(u.iter().map(|s| s.dim() as u32).collect())
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let p = a.prime();
    let mut m = Matrix::zeros(p, a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            m.set(r, c, a.get(r, c));
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            m.set(a.rows() + r, a.cols() + c, b.get(r, c));
        }
    }
    m
}

fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let mut aug = m.hstack(&Matrix::identity(m.prime(), n));
    let piv = aug.rref();
    if piv.len() < n || piv.get(n.wrapping_sub(1)).is_some_and(|&c| c != n - 1) {
        return None;
    }
    let mut inv = Matrix::zeros(m.prime(), n, n);
    for r in 0..n {
        for c in 0..n {
            inv.set(r, c, aug.get(r, n + c));
        }
    }
    Some(inv)
}

/// Basis of `Hom(m, n)`; each element is one matrix `n_v × m_v` per vertex.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Vec<Matrix>>> {
    if m.algebra != n.algebra || m.prime != n.prime {
        return Err(Error::AlgebraMismatch);
    }
    let p = m.prime;
    let q = m.algebra.quiver();
    let nv = m.n();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + (n.dim[v] * m.dim[v]) as usize;
    }
    let unknowns = offset[nv];
    let var = |v: usize, i: usize, k: usize| offset[v] + i * m.dim[v] as usize + k;
    let rows: usize = q
        .arrows()
        .iter()
        .map(|a| (n.dim[a.target] * m.dim[a.source]) as usize)
        .sum();
    let mut sys = Matrix::zeros(p, rows, unknowns);
    let mut row = 0;
    for (ai, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let x = &m.maps[ai];
        let y = &n.maps[ai];
        // f_t x_α - y_α f_s = 0, entry (i, j)
        for i in 0..n.dim[t] as usize {
            for j in 0..m.dim[s] as usize {
                for k in 0..m.dim[t] as usize {
                    let c = x.get(k, j);
                    if c != 0 {
                        let col = var(t, i, k);
                        sys.set(row, col, p.add(sys.get(row, col), c));
                    }
                }
                for k in 0..n.dim[s] as usize {
                    let c = y.get(i, k);
                    if c != 0 {
                        let col = var(s, k, j);
                        sys.set(row, col, p.sub(sys.get(row, col), c));
                    }
                }
                row += 1;
            }
        }
    }
    let ker = sys.kernel();
    Ok((0..ker.rows())
        .map(|r| {
            (0..nv)
                .map(|v| {
                    let (rr, cc) = (n.dim[v] as usize, m.dim[v] as usize);
                    let mut f = Matrix::zeros(p, rr, cc);
                    for i in 0..rr {
                        for k in 0..cc {
                            f.set(i, k, ker.get(r, var(v, i, k)));
                        }
                    }
                    f
                })
                .collect()
        })
        .collect())
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}

pub fn end_dim(m: &Representation) -> usize {
    hom_basis(m, m).expect("same algebra").len()
}

/// How a filtration search ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A chain `M_0 ⊇ ... ⊇ M_{L+1}`, one graded space per step.
    Found(Vec<Graded>),
    NotFound,
}

struct FiltrationSearch<'a> {
    m: &'a Representation,
    remaining: Vec<DimVector>,
    socle: Vec<Graded>,
    cap: u64,
    nodes: u64,
    want: u64,
    hits: u64,
    witness: Option<Vec<Graded>>,
    chain: Vec<Graded>,
}

impl FiltrationSearch<'_> {
    /// Returns `Ok(false)` once enough witnesses are found.
    fn step(&mut self, l: usize) -> Result<bool> {
        let big_l = self.m.algebra.loewy_bound();
        let ml = self.chain[l].clone();
        let jm = self.m.radical_of(&ml);
        let target = &self.remaining[l + 1];
        if jm.iter().zip(target.iter()).any(|(s, &r)| s.dim() > r as usize) {
            return Ok(true);
        }
        if l == big_l {
            // remaining[L + 1] = 0 forces J M_L = 0, checked above
            self.hits += 1;
            if self.witness.is_none() {
                let mut w = self.chain.clone();
                w.push(self.m.zero_sub());
                self.witness = Some(w);
            }
            return Ok(self.hits < self.want);
        }
        // M_{l+1} is killed by J^{L-l}, so it lies in soc^{L-l}
        let bound: Graded = ml
            .iter()
            .zip(&self.socle[big_l - l])
            .map(|(a, b)| a.intersect(b))
            .collect();
        let mut slots = Vec::with_capacity(ml.len());
        for v in 0..ml.len() {
            let need = target[v] as usize;
            if bound[v].dim() < need {
                return Ok(true);
            }
            let comp = jm[v].complement_in(&bound[v]);
            slots.push((comp, need - jm[v].dim()));
        }
        let mut picked: Vec<Matrix> = Vec::with_capacity(slots.len());
        let mut err = None;
        let go = self.choose(l, &jm, &slots, &mut picked, &mut err);
        if let Some(e) = err {
            return Err(e);
        }
        Ok(go)
    }

    fn choose(
        &mut self,
        l: usize,
        jm: &Graded,
        slots: &[(Matrix, usize)],
        picked: &mut Vec<Matrix>,
        err: &mut Option<Error>,
    ) -> bool {
        let v = picked.len();
        if v == slots.len() {
            self.nodes += 1;
            if self.nodes > self.cap {
                *err = Some(Error::SearchCapExceeded(self.cap));
                return false;
            }
            let next: Graded = jm
                .iter()
                .zip(slots.iter().zip(picked.iter()))
                .map(|(j, ((comp, _), w))| {
                    if w.rows() == 0 {
                        j.clone()
                    } else {
                        j.sum(&Subspace::span(&w.mul(comp)))
                    }
                })
                .collect();
            self.chain.push(next);
            let r = self.step(l + 1);
            self.chain.pop();
            return match r {
                Ok(go) => go,
                Err(e) => {
                    *err = Some(e);
                    false
                }
            };
        }
        let (comp, k) = &slots[v];
        let p = self.m.prime;
        let mut go = true;
        for_each_subspace(p, comp.rows(), *k, &mut |w| {
            picked.push(w.clone());
            go = self.choose(l, jm, slots, picked, err);
            picked.pop();
            go
        });
        go
    }
}

fn run_search(m: &Representation, s: &SemisimpleSequence, want: u64, cap: u64) -> Result<(u64, Option<Vec<Graded>>)> {
    if s.total() != *m.dim() {
        return Err(Error::MismatchedTotals);
    }
    if s.loewy_bound() != m.algebra.loewy_bound() {
        return Err(Error::LayerCountMismatch {
            expected: m.algebra.loewy_bound() + 1,
            found: s.layers().len(),
        });
    }
    let big_l = s.loewy_bound();
    let mut remaining = vec![DimVector::zero(m.n()); big_l + 2];
    for l in (0..=big_l).rev() {
        remaining[l] = remaining[l + 1].add(s.layer(l));
    }
    let mut search = FiltrationSearch {
        m,
        remaining,
        socle: m.socle_series(),
        cap,
        nodes: 0,
        want,
        hits: 0,
        witness: None,
        chain: vec![m.full()],
    };
    search.step(0)?;
    Ok((search.hits, search.witness))
}

/// Whether some filtration of `m` is governed by `s` (exhaustive over `F_p`).
pub fn filtration_exists(m: &Representation, s: &SemisimpleSequence, cap: u64) -> Result<bool> {
    Ok(run_search(m, s, 1, cap)?.0 > 0)
}

pub fn filtration_witness(m: &Representation, s: &SemisimpleSequence, cap: u64) -> Result<SearchOutcome> {
    Ok(match run_search(m, s, 1, cap)?.1 {
        Some(w) => SearchOutcome::Found(w),
        None => SearchOutcome::NotFound,
    })
}

/// Number of governed filtrations, counting at most `limit`.
pub fn filtration_count(m: &Representation, s: &SemisimpleSequence, limit: u64, cap: u64) -> Result<u64> {
    Ok(run_search(m, s, limit.max(1), cap)?.0)
}

/// Realizable sequences governing some filtration of `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaReport {
    pub count: usize,
    pub witnesses: Vec<SemisimpleSequence>,
    /// True if the count stopped early at two.
    pub truncated: bool,
}

fn gamma_impl(m: &Representation, cap: u64, stop_at: Option<usize>) -> Result<GammaReport> {
    let radical = m.radical_layering();
    let seqs = layers::enumerate_sequences_capped(m.dim(), m.algebra.loewy_bound(), DEFAULT_SEQUENCE_CAP)?;
    let mut witnesses = vec![radical.clone()];
    for s in seqs {
        if s == radical || !layers::is_realizable(&s, &m.algebra) || !dominance_leq(&s, &radical)? {
            continue;
        }
        if filtration_exists(m, &s, cap)? {
            witnesses.push(s);
            if stop_at.is_some_and(|k| witnesses.len() >= k) {
                return Ok(GammaReport {
                    count: witnesses.len(),
                    witnesses,
                    truncated: true,
                });
            }
        }
    }
    Ok(GammaReport {
        count: witnesses.len(),
        witnesses,
        truncated: false,
    })
}

/// `Γ(M)`: realizable sequences governing a filtration, including `S(M)`.
pub fn gamma(m: &Representation, cap: u64) -> Result<GammaReport> {
    gamma_impl(m, cap, None)
}

pub fn gamma_exceeds_one(m: &Representation, cap: u64) -> Result<bool> {
    Ok(gamma_impl(m, cap, Some(2))?.count > 1)
}

/// Outcome for one summand of a Fitting decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SummandKind {
    /// Every sampled endomorphism had a power of a linear characteristic
    /// polynomial: indecomposable, also after extending scalars (probabilistic).
    Indecomposable,
    /// Indecomposable over `F_p`, but its endomorphisms see an irreducible
    /// factor of this degree, so it splits into that many conjugate pieces
    /// over the algebraic closure.
    SplitsOverExtension(usize),
}

#[derive(Debug, Clone)]
pub struct Summand {
    pub module: Representation,
    pub kind: SummandKind,
}

/// Splits `m` along coprime factors of characteristic polynomials of random
/// endomorphisms. `attempts` failed draws mark a summand as unsplittable.
pub fn fitting_decompose(m: &Representation, seed: u64, attempts: usize) -> Vec<Summand> {
    let mut out = Vec::new();
    let mut work = vec![m.clone()];
    let mut counter = 0u64;
    while let Some(rep) = work.pop() {
        if rep.dim().is_zero() {
            continue;
        }
        let basis = hom_basis(&rep, &rep).expect("same algebra");
        let mut max_degree = 1;
        let mut split = None;
        for _ in 0..attempts.max(1) {
            let mut rng = rng_for(seed, tags::FITTING, counter);
            counter += 1;
            let phi = random_combination(&basis, rep.prime, &mut rng);
            let chi = phi
                .iter()
                .map(charpoly)
                .fold(crate::poly::Poly::one(rep.prime), |a, b| a.mul(&b));
            let factors = distinct_irreducible_factors(&chi, &mut rng);
            if factors.len() >= 2 {
                split = Some((phi, factors));
                break;
            }
            if let Some(f) = factors.first() {
                max_degree = max_degree.max(f.degree().unwrap_or(1));
            }
        }
        match split {
            Some((phi, factors)) => {
                for g in factors {
                    let sub: Graded = phi
                        .iter()
                        .map(|f| {
                            let d = f.rows();
                            let mut gm = g.eval_matrix(f);
                            let base = gm.clone();
                            for _ in 1..d {
                                gm = gm.mul(&base);
                            }
                            Subspace::span(&gm.kernel())
                        })
                        .collect();
                    work.push(rep.restrict(&sub));
                }
            }
            None => {
                let kind = if max_degree > 1 {
                    SummandKind::SplitsOverExtension(max_degree)
                } else {
                    SummandKind::Indecomposable
                };
                out.push(Summand { module: rep, kind });
            }
        }
    }
    out.sort_by(|a, b| a.module.dim().cmp(b.module.dim()));
    out
}

fn random_combination<R: Rng + ?Sized>(basis: &[Vec<Matrix>], p: Prime, rng: &mut R) -> Vec<Matrix> {
    let mut acc: Vec<Matrix> = basis[0].iter().map(|f| Matrix::zeros(p, f.rows(), f.cols())).collect();
    for b in basis {
        let c = p.random(rng);
        for (a, f) in acc.iter_mut().zip(b) {
            *a = a.add(&f.scale(c));
        }
    }
    acc
}
