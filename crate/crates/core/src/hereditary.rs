//! Path algebras of acyclic quivers: generic ext, `Sub(d)`, Schur roots,
//! canonical decompositions and the generic parameter count.
//!
//! Ext is obtained as `dim Hom − ⟨d, e⟩`, exact for hereditary algebras.
//! Generic values are estimated by minimising over random samples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::quiver::{DimVector, Quiver, TruncatedAlgebra};
use crate::repfield::{end_dim, fitting_decompose, hom_dim, Representation, SummandKind};
use crate::rng::{derive_seed, rng_for, tags};

pub const DEFAULT_SAMPLES: usize = 12;
pub const DEFAULT_PRIME: u64 = 32003;
pub const DEFAULT_ROUNDS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingConfig {
    pub samples: usize,
    pub prime: u64,
    pub seed: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            samples: DEFAULT_SAMPLES,
            prime: DEFAULT_PRIME,
            seed: 0,
        }
    }
}

impl SamplingConfig {
    fn prime(&self) -> Result<Prime> {
        Prime::new(self.prime)
    }
}

fn dim_tag(d: &DimVector) -> u64 {
    d.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &x| {
        (h ^ x as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Uniform random representation of an acyclic quiver.
pub fn sample_representation(q: &Quiver, d: &DimVector, p: Prime, seed: u64) -> Result<Representation> {
    d.check_len(q.vertex_count())?;
    let alg = TruncatedAlgebra::hereditary(q.clone())?;
    let mut rng = rng_for(seed, tags::SAMPLE, dim_tag(d));
    Representation::random(&alg, p, d, &mut rng)
}

fn sample_indexed(q: &Quiver, d: &DimVector, p: Prime, seed: u64, i: usize) -> Result<Representation> {
    sample_representation(q, d, p, derive_seed(seed, tags::SAMPLE, i as u64))
}

/// `min(dim Hom(M, N)) − ⟨d1, d2⟩` over `samples` random pairs; an upper
/// bound on the generic ext that can only drop as `samples` grows.
pub fn generic_ext(q: &Quiver, d1: &DimVector, d2: &DimVector, cfg: &SamplingConfig) -> Result<i64> {
    let p = cfg.prime()?;
    let euler = q.euler_form(d1, d2)?;
    if d1.is_zero() || d2.is_zero() {
        return Ok(0);
    }
    let mut best = i64::MAX;
    for i in 0..cfg.samples.max(1) {
        let m = sample_indexed(q, d1, p, cfg.seed, 2 * i)?;
        let n = sample_indexed(q, d2, p, cfg.seed, 2 * i + 1)?;
        let ext = hom_dim(&m, &n)? as i64 - euler;
        debug_assert!(ext >= 0);
        best = best.min(ext);
        if best == 0 {
            break;
        }
    }
    Ok(best)
}

/// All `d' ≤ d` with `ext(d', d − d') = 0`, in lexicographic order.
pub fn sub_dimension_vectors(q: &Quiver, d: &DimVector, cfg: &SamplingConfig) -> Result<Vec<DimVector>> {
    d.check_len(q.vertex_count())?;
    let mut out = Vec::new();
    let mut cur = vec![0u32; d.len()];
    loop {
        let sub = DimVector::new(cur.clone());
        let quot = d.sub(&sub);
        if generic_ext(q, &sub, &quot, cfg)? == 0 {
            out.push(sub);
        }
        // odometer over the box 0..=d
        let Some(i) = (0..cur.len()).rev().find(|&i| cur[i] < d[i]) else {
            break;
        };
        cur[i] += 1;
        for x in cur.iter_mut().skip(i + 1) {
            *x = 0;
        }
    }
    Ok(out)
}

/// Whether the smallest sampled endomorphism dimension is 1.
pub fn is_schur_root(q: &Quiver, d: &DimVector, cfg: &SamplingConfig) -> Result<bool> {
    if d.is_zero() {
        return Ok(false);
    }
    let p = cfg.prime()?;
    for i in 0..cfg.samples.max(1) {
        let m = sample_indexed(q, d, p, cfg.seed, i)?;
        if end_dim(&m) == 1 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalDecomposition {
    /// Distinct summand vectors with multiplicities, sorted by vector.
    pub summands: Vec<(DimVector, u32)>,
    /// Both Schur and ext conditions passed for the reported summands.
    pub verified: bool,
    /// Sampling rounds used.
    pub rounds: usize,
}

impl CanonicalDecomposition {
    pub fn total(&self, n: usize) -> DimVector {
        self.summands
            .iter()
            .fold(DimVector::zero(n), |acc, (v, m)| (0..*m).fold(acc, |a, _| a.add(v)))
    }

    /// `Σ mult · (1 − ⟨v, v⟩)`.
    pub fn mu(&self, q: &Quiver) -> Result<i64> {
        let mut mu = 0;
        for (v, m) in &self.summands {
            mu += *m as i64 * (1 - q.euler_form(v, v)?);
        }
        Ok(mu)
    }

    /// `d1 + d1 + d2` style rendering, e.g. `(1,1)x2`.
    pub fn render(&self) -> String {
        self.summands
            .iter()
            .map(|(v, m)| if *m == 1 { v.to_string() } else { format!("{v}x{m}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn tally(parts: Vec<DimVector>) -> Vec<(DimVector, u32)> {
    let mut parts = parts;
    parts.sort();
    let mut out: Vec<(DimVector, u32)> = Vec::new();
    for v in parts {
        match out.last_mut() {
            Some((w, m)) if *w == v => *m += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Summand vectors of one sampled module. A summand that only splits over
/// an extension of degree `k` stands for `k` copies of `dim / k`.
fn candidate(q: &Quiver, d: &DimVector, p: Prime, seed: u64, attempts: usize) -> Result<Option<Vec<DimVector>>> {
    let m = sample_representation(q, d, p, seed)?;
    let mut parts = Vec::new();
    for s in fitting_decompose(&m, seed, attempts) {
        match s.kind {
            SummandKind::Indecomposable => parts.push(s.module.dim().clone()),
            SummandKind::SplitsOverExtension(k) => {
                let dim = s.module.dim();
                if dim.iter().any(|&x| !(x as usize).is_multiple_of(k)) {
                    return Ok(None);
                }
                let piece = DimVector::new(dim.iter().map(|&x| x / k as u32).collect());
                parts.extend(std::iter::repeat_n(piece, k));
            }
        }
    }
    Ok(Some(parts))
}

fn verify(q: &Quiver, summands: &[(DimVector, u32)], cfg: &SamplingConfig) -> Result<bool> {
    for (v, _) in summands {
        if !is_schur_root(q, v, cfg)? {
            return Ok(false);
        }
    }
    for (i, (v, m)) in summands.iter().enumerate() {
        for (j, (w, _)) in summands.iter().enumerate() {
            if i == j && *m < 2 {
                continue;
            }
            if generic_ext(q, v, w, cfg)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Sample, split, and check the two conditions characterising the
/// canonical decomposition; on failure, double the samples and try again.
/// After `rounds` failures the last candidate is returned unverified.
pub fn canonical_decomposition(
    q: &Quiver,
    d: &DimVector,
    cfg: &SamplingConfig,
    rounds: usize,
) -> Result<CanonicalDecomposition> {
    d.check_len(q.vertex_count())?;
    if !q.is_acyclic() {
        return Err(Error::CyclicQuiver);
    }
    if d.is_zero() {
        return Ok(CanonicalDecomposition {
            summands: Vec::new(),
            verified: true,
            rounds: 0,
        });
    }
    let p = cfg.prime()?;
    let mut samples = cfg.samples.max(1);
    let mut last = vec![(d.clone(), 1)];
    for round in 0..rounds.max(1) {
        let round_cfg = SamplingConfig {
            samples,
            prime: cfg.prime,
            seed: derive_seed(cfg.seed, tags::CANON, round as u64),
        };
        // the finest split among a few sampled modules
        let mut best: Option<Vec<DimVector>> = None;
        for i in 0..samples {
            let seed = derive_seed(round_cfg.seed, tags::CANON, i as u64);
            if let Some(parts) = candidate(q, d, p, seed, samples)? {
                if best.as_ref().is_none_or(|b| parts.len() > b.len()) {
                    best = Some(parts);
                }
            }
            if i + 1 >= 3 && best.is_some() {
                break;
            }
        }
        if let Some(parts) = best {
            last = tally(parts);
        }
        if verify(q, &last, &round_cfg)? {
            return Ok(CanonicalDecomposition {
                summands: last,
                verified: true,
                rounds: round + 1,
            });
        }
        samples *= 2;
    }
    Ok(CanonicalDecomposition {
        summands: last,
        verified: false,
        rounds: rounds.max(1),
    })
}

/// Generic number of parameters and whether a dense orbit exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericParameters {
    pub mu: i64,
    pub dense_orbit: bool,
}

pub fn mu_generic_params(q: &Quiver, decomposition: &CanonicalDecomposition) -> Result<GenericParameters> {
    let mu = decomposition.mu(q)?;
    Ok(GenericParameters {
        mu,
        dense_orbit: mu == 0,
    })
}
