//! Semisimple sequences, the dominance order, realizability and generic layerings.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, TruncatedAlgebra};

/// Default refusal threshold for exhaustive sequence enumeration.
pub const DEFAULT_SEQUENCE_CAP: u128 = 10_000_000;

/// Dimension vectors of the layers `S_0, ..., S_L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SemisimpleSequence {
    layers: Vec<DimVector>,
}

impl SemisimpleSequence {
    pub fn new(layers: Vec<DimVector>) -> Result<Self> {
        let Some(first) = layers.first() else {
            return Err(Error::LayerCountMismatch { expected: 1, found: 0 });
        };
        let n = first.len();
        for l in &layers {
            l.check_len(n)?;
        }
        Ok(SemisimpleSequence { layers })
    }

    pub fn zero(n: usize, loewy_bound: usize) -> Self {
        SemisimpleSequence {
            layers: vec![DimVector::zero(n); loewy_bound + 1],
        }
    }

    /// `(d, 0, ..., 0)`.
    pub fn semisimple(d: &DimVector, loewy_bound: usize) -> Self {
        let mut s = Self::zero(d.len(), loewy_bound);
        s.layers[0] = d.clone();
        s
    }

    pub fn from_rows(rows: &[&[u32]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| DimVector::new(r.to_vec())).collect())
    }

    pub fn layers(&self) -> &[DimVector] {
        &self.layers
    }

    pub fn layer(&self, l: usize) -> &DimVector {
        &self.layers[l]
    }

    /// `L`, one less than the number of layers.
    pub fn loewy_bound(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.layers[0].len()
    }

    pub fn total(&self) -> DimVector {
        let mut t = DimVector::zero(self.vertex_count());
        for l in &self.layers {
            t = t.add(l);
        }
        t
    }

    /// Number of nonzero layers counted up to the last nonzero one.
    pub fn length(&self) -> usize {
        self.layers.iter().rposition(|l| !l.is_zero()).map_or(0, |i| i + 1)
    }

    /// Componentwise partial sums, flattened layer by layer.
    fn partial_sums(&self) -> Vec<i64> {
        let n = self.vertex_count();
        let mut acc = vec![0i64; n];
        let mut out = Vec::with_capacity(n * self.layers.len());
        for l in &self.layers {
            for (a, &x) in acc.iter_mut().zip(l.iter()) {
                *a += x as i64;
            }
            out.extend_from_slice(&acc);
        }
        out
    }

    fn check_comparable(&self, other: &SemisimpleSequence) -> Result<()> {
        if self.layers.len() != other.layers.len() {
            return Err(Error::LayerCountMismatch {
                expected: self.layers.len(),
                found: other.layers.len(),
            });
        }
        if self.total() != other.total() {
            return Err(Error::MismatchedTotals);
        }
        Ok(())
    }

    /// Text form: layers separated by `;`, entries `vertex:multiplicity`.
    pub fn render(&self) -> String {
        self.layers
            .iter()
            .map(|l| {
                l.iter()
                    .enumerate()
                    .filter(|(_, &m)| m > 0)
                    .map(|(v, m)| format!("{}:{}", v + 1, m))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Parses the text form for a quiver with `n` vertices. Missing trailing
    /// layers are filled with zeros up to `loewy_bound`.
    pub fn parse(text: &str, n: usize, loewy_bound: usize) -> Result<Self> {
        let segments: Vec<&str> = text.trim().split(';').collect();
        if segments.len() > loewy_bound + 1 {
            return Err(Error::Parse(format!(
                "{} layers given, at most {} allowed",
                segments.len(),
                loewy_bound + 1
            )));
        }
        let mut layers = vec![vec![0u32; n]; loewy_bound + 1];
        for (l, seg) in segments.iter().enumerate() {
            for entry in seg.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                let (v, m) = entry
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected vertex:multiplicity, got `{entry}`")))?;
                let v: usize = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad vertex `{v}`")))?;
                let m: u32 = m
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad multiplicity `{m}`")))?;
                if v == 0 || v > n {
                    return Err(Error::Parse(format!("vertex {v} outside 1..={n}")));
                }
                layers[l][v - 1] += m;
            }
        }
        Self::new(layers.into_iter().map(DimVector::new).collect())
    }
}

impl fmt::Display for SemisimpleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Dominance: every partial sum of `s` is bounded by the one of `t`.
pub fn dominance_leq(s: &SemisimpleSequence, t: &SemisimpleSequence) -> Result<bool> {
    s.check_comparable(t)?;
    Ok(s.partial_sums().iter().zip(t.partial_sums()).all(|(a, b)| *a <= b))
}

/// `|Seq(d)|` for sequences with `L + 1` layers.
pub fn sequence_count(d: &DimVector, loewy_bound: usize) -> u128 {
    d.iter()
        .map(|&di| binomial(di as u128 + loewy_bound as u128, loewy_bound as u128))
        .fold(1u128, |a, b| a.saturating_mul(b))
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// All sequences with total `d`, lexicographic on the concatenated layers.
pub fn enumerate_sequences(d: &DimVector, loewy_bound: usize) -> Vec<SemisimpleSequence> {
    let n = d.len();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n * (loewy_bound + 1)];
    let mut remaining = d.entries().to_vec();
    fill(0, n, loewy_bound, &mut cur, &mut remaining, &mut out);
    out
}

/// Like [`enumerate_sequences`] but refuses above `cap` items.
pub fn enumerate_sequences_capped(d: &DimVector, loewy_bound: usize, cap: u128) -> Result<Vec<SemisimpleSequence>> {
    let count = sequence_count(d, loewy_bound);
    if count > cap {
        return Err(Error::EnumerationCapExceeded { count, cap });
    }
    Ok(enumerate_sequences(d, loewy_bound))
}

fn fill(
    pos: usize,
    n: usize,
    loewy_bound: usize,
    cur: &mut Vec<u32>,
    remaining: &mut Vec<u32>,
    out: &mut Vec<SemisimpleSequence>,
) {
    if pos == cur.len() {
        let layers = cur.chunks(n).map(|c| DimVector::new(c.to_vec())).collect();
        out.push(SemisimpleSequence { layers });
        return;
    }
    let (l, v) = (pos / n, pos % n);
    let rem = remaining[v];
    let choices = if l == loewy_bound { rem..=rem } else { 0..=rem };
    for x in choices {
        cur[pos] = x;
        remaining[v] = rem - x;
        fill(pos + 1, n, loewy_bound, cur, remaining, out);
    }
    remaining[v] = rem;
    cur[pos] = 0;
}

/// `udim S_{l+1} <= udim S_l · A` for every `l < L`.
pub fn is_realizable(s: &SemisimpleSequence, alg: &TruncatedAlgebra) -> bool {
    if s.vertex_count() != alg.vertex_count() || s.loewy_bound() != alg.loewy_bound() {
        return false;
    }
    let a = alg.quiver().adjacency_matrix();
    s.layers.windows(2).all(|w| {
        let reach = w[0].times(&a);
        w[1].iter().zip(&reach).all(|(&x, &r)| x as i64 <= r)
    })
}

fn check_shape(s: &SemisimpleSequence, alg: &TruncatedAlgebra) -> Result<()> {
    s.layers[0].check_len(alg.vertex_count())?;
    if s.loewy_bound() != alg.loewy_bound() {
        return Err(Error::LayerCountMismatch {
            expected: alg.loewy_bound() + 1,
            found: s.layers.len(),
        });
    }
    Ok(())
}

/// `udim E_1(X) = udim X · B` with `B = Aᵀ`, i.e. `Σ_k X_k A[i][k]` at `i`.
fn e1(x: &[i64], a: &[Vec<i64>]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(&aik, &xk)| aik * xk).sum())
        .collect()
}

/// The generic socle layering of the modules with radical layering `s`.
pub fn generic_socle_layering(s: &SemisimpleSequence, alg: &TruncatedAlgebra) -> Result<SemisimpleSequence> {
    check_shape(s, alg)?;
    if !is_realizable(s, alg) {
        return Err(Error::NotRealizable);
    }
    let a = alg.quiver().adjacency_matrix();
    let layers: Vec<Vec<i64>> = s.layers.iter().map(DimVector::to_i64).collect();
    let socle = socle_rec(&layers, &a);
    SemisimpleSequence::new(socle.iter().map(|v| DimVector::from_i64_clamped(v)).collect())
}

fn socle_rec(s: &[Vec<i64>], a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let big_l = s.len() - 1;
    let n = s[0].len();
    if s.iter().flatten().all(|&x| x == 0) {
        return vec![vec![0; n]; big_l + 1];
    }
    let zero = vec![0i64; n];
    let layer = |l: usize| if l <= big_l { &s[l] } else { &zero };

    // socle: sup over j of Σ_{l >= L-j} (S_l - E_1(S_{l+1}))
    let mut soc0 = vec![i64::MIN; n];
    let mut acc = vec![0i64; n];
    for j in 0..=big_l {
        let l = big_l - j;
        let e = e1(layer(l + 1), a);
        for k in 0..n {
            acc[k] += layer(l)[k] - e[k];
            soc0[k] = soc0[k].max(acc[k]);
        }
    }

    // radical layering of M / soc M
    let mut quotient = vec![vec![0i64; n]; big_l + 1];
    let mut e_sum = vec![0i64; n];
    let mut q_sum = vec![0i64; n];
    for m in 1..=big_l {
        let top = big_l - m + 1;
        let e = e1(&s[top], a);
        for k in 0..n {
            e_sum[k] += e[k];
            q_sum[k] += quotient[top][k];
        }
        let idx = big_l - m;
        for k in 0..n {
            let bound = e_sum[k] - q_sum[k];
            debug_assert!(bound >= 0, "negative quotient bound");
            quotient[idx][k] = s[idx][k].min(bound).max(0);
        }
    }

    let rest = socle_rec(&quotient, a);
    let mut out = Vec::with_capacity(big_l + 1);
    out.push(soc0);
    out.extend(rest.into_iter().take(big_l));
    out
}

/// Generic radical layering of `Rep_d(KQ)` for an acyclic quiver, with
/// `L` equal to the longest path length.
pub fn generic_radical_layering_hereditary(q: &Quiver, d: &DimVector) -> Result<SemisimpleSequence> {
    d.check_len(q.vertex_count())?;
    let big_l = q.longest_path_length().ok_or(Error::CyclicQuiver)?;
    let a = q.adjacency_matrix();
    let mut rest = d.to_i64();
    let mut layers = Vec::with_capacity(big_l + 1);
    for _ in 0..=big_l {
        let reach = DimVector::from_i64_clamped(&rest).times(&a);
        let t: Vec<i64> = rest.iter().zip(&reach).map(|(&r, &x)| (r - x).max(0)).collect();
        for (r, &x) in rest.iter_mut().zip(&t) {
            *r -= x;
        }
        layers.push(DimVector::from_i64_clamped(&t));
    }
    SemisimpleSequence::new(layers)
}

/// A radical layering together with a socle layering of the same total.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LayeringPair {
    pub radical: SemisimpleSequence,
    pub socle: SemisimpleSequence,
}

impl LayeringPair {
    pub fn new(radical: SemisimpleSequence, socle: SemisimpleSequence) -> Result<Self> {
        radical.check_comparable(&socle)?;
        Ok(LayeringPair { radical, socle })
    }

    /// Pair built from `s` and its generic socle layering.
    pub fn generic(s: &SemisimpleSequence, alg: &TruncatedAlgebra) -> Result<Self> {
        Ok(LayeringPair {
            radical: s.clone(),
            socle: generic_socle_layering(s, alg)?,
        })
    }

    /// Componentwise dominance in both slots.
    pub fn leq(&self, other: &LayeringPair) -> Result<bool> {
        Ok(dominance_leq(&self.radical, &other.radical)? && dominance_leq(&self.socle, &other.socle)?)
    }

    fn key(&self) -> Vec<i64> {
        let mut k = self.radical.partial_sums();
        k.extend(self.socle.partial_sums());
        k
    }
}

/// The minimal elements of `pairs` under the product dominance order.
/// Duplicates collapse to their first occurrence; input order is kept.
pub fn minimal_pairs(pairs: &[LayeringPair]) -> Vec<LayeringPair> {
    minimal_indices(pairs).into_iter().map(|i| pairs[i].clone()).collect()
}

/// Indices of the minimal pairs in `pairs`.
pub fn minimal_indices(pairs: &[LayeringPair]) -> Vec<usize> {
    let keys: Vec<Vec<i64>> = pairs.iter().map(LayeringPair::key).collect();
    let below = |a: &[i64], b: &[i64]| a.iter().zip(b).all(|(x, y)| x <= y);
    (0..pairs.len())
        .into_par_iter()
        .filter(|&i| {
            !keys
                .iter()
                .enumerate()
                .any(|(j, kj)| j != i && below(kj, &keys[i]) && (kj != &keys[i] || j < i))
        })
        .collect()
}
