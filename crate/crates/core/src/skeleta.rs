//! Abstract skeleta (path forests) and the generic presentations they induce
//! over truncated path algebras.
//!
//! A skeleton lives in `P_0 = ⊕_r Λ z_r`, one top element `z_r` per copy of a
//! simple in the top layer. Its elements are paths `p·z_r`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Matrix, Prime};
use crate::layers::{binomial, is_realizable, SemisimpleSequence};
use crate::quiver::{DimVector, Path, Quiver, TruncatedAlgebra};
use crate::repfield::Representation;
use crate::rng::{rng_for, tags};

/// Default number of fresh draws before `specialize` gives up.
pub const DEFAULT_RETRIES: usize = 20;

/// `p·z_r`: a path applied to the top element with index `top`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TopPath {
    pub top: usize,
    pub path: Path,
}

impl TopPath {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_trivial()
    }

    pub fn then(&self, arrow: usize) -> TopPath {
        TopPath {
            top: self.top,
            path: self.path.then(arrow),
        }
    }

    /// `b1*z1`, or `z1` for the top itself.
    pub fn render(&self, q: &Quiver) -> String {
        if self.path.is_trivial() {
            format!("z{}", self.top + 1)
        } else {
            format!("{}*z{}", self.path.render(q), self.top + 1)
        }
    }

    fn key(&self) -> (usize, usize, &Path) {
        (self.path.len(), self.top, &self.path)
    }
}

impl PartialOrd for TopPath {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TopPath {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Skeleton {
    /// Vertex of each top element.
    pub tops: Vec<usize>,
    /// Sorted by (length, top, path).
    pub paths: Vec<TopPath>,
}

impl Skeleton {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn contains(&self, tp: &TopPath) -> bool {
        self.paths.binary_search(tp).is_ok()
    }

    pub fn end_vertex(&self, tp: &TopPath, q: &Quiver) -> usize {
        tp.path.end(q)
    }

    /// Layering read off path lengths and end vertices.
    pub fn layering(&self, alg: &TruncatedAlgebra) -> SemisimpleSequence {
        let q = alg.quiver();
        let n = q.vertex_count();
        let mut layers = vec![vec![0u32; n]; alg.loewy_bound() + 1];
        for tp in &self.paths {
            if let Some(layer) = layers.get_mut(tp.len()) {
                layer[tp.path.end(q)] += 1;
            }
        }
        SemisimpleSequence::new(layers.into_iter().map(DimVector::new).collect()).expect("uniform widths")
    }

    /// Structural audit: tops match starts, paths are valid and short
    /// enough, and the set is closed under initial subpaths.
    pub fn is_well_formed(&self, alg: &TruncatedAlgebra) -> bool {
        let q = alg.quiver();
        self.paths.windows(2).all(|w| w[0] < w[1])
            && self.paths.iter().all(|tp| {
                tp.top < self.tops.len()
                    && tp.path.start == self.tops[tp.top]
                    && tp.path.is_valid(q)
                    && tp.len() <= alg.loewy_bound()
                    && (tp.is_empty() || {
                        let mut parent = tp.clone();
                        parent.path.arrows.pop();
                        self.contains(&parent)
                    })
            })
            && (0..self.tops.len()).all(|r| {
                self.contains(&TopPath {
                    top: r,
                    path: Path::trivial(self.tops[r]),
                })
            })
    }

    /// Position of `tp` among the skeleton paths ending at the same vertex.
    pub fn local_index(&self, tp: &TopPath, q: &Quiver) -> Option<usize> {
        let v = tp.path.end(q);
        self.paths.iter().filter(|x| x.path.end(q) == v).position(|x| x == tp)
    }

    pub fn render(&self, q: &Quiver) -> String {
        self.paths.iter().map(|tp| tp.render(q)).collect::<Vec<_>>().join(", ")
    }
}

/// Number of skeleta with layering `s`: `Π_l Π_k C((S_l·A)_k, S_{l+1,k})`.
pub fn count_skeleta(s: &SemisimpleSequence, alg: &TruncatedAlgebra) -> u128 {
    let a = alg.quiver().adjacency_matrix();
    let mut count: u128 = 1;
    for l in 0..s.loewy_bound() {
        let avail = s.layer(l).times(&a);
        for (k, &need) in s.layer(l + 1).iter().enumerate() {
            let c = binomial(avail[k].max(0) as u128, need as u128);
            count = count.saturating_mul(c);
        }
    }
    count
}

/// Visits skeleta in a fixed order; the visitor returns `false` to stop.
/// Returns `false` if stopped early.
pub fn for_each_skeleton<F>(s: &SemisimpleSequence, alg: &TruncatedAlgebra, visit: &mut F) -> bool
where
    F: FnMut(Skeleton) -> bool,
{
    if s.vertex_count() != alg.vertex_count() || s.loewy_bound() != alg.loewy_bound() {
        return true;
    }
    let mut tops = Vec::new();
    for (v, &m) in s.layer(0).iter().enumerate() {
        tops.extend(std::iter::repeat_n(v, m as usize));
    }
    let layer0: Vec<TopPath> = tops
        .iter()
        .enumerate()
        .map(|(r, &v)| TopPath {
            top: r,
            path: Path::trivial(v),
        })
        .collect();
    let mut acc = layer0.clone();
    extend_layers(s, alg, &tops, 0, layer0, &mut acc, visit)
}

fn extend_layers<F>(
    s: &SemisimpleSequence,
    alg: &TruncatedAlgebra,
    tops: &[usize],
    l: usize,
    current: Vec<TopPath>,
    acc: &mut Vec<TopPath>,
    visit: &mut F,
) -> bool
where
    F: FnMut(Skeleton) -> bool,
{
    let q = alg.quiver();
    if l == s.loewy_bound() || s.layers()[l + 1..].iter().all(|d| d.is_zero()) {
        let mut paths = acc.clone();
        paths.sort();
        return visit(Skeleton {
            tops: tops.to_vec(),
            paths,
        });
    }
    let n = q.vertex_count();
    let mut by_vertex: Vec<Vec<TopPath>> = vec![Vec::new(); n];
    for tp in &current {
        for a in q.arrows_from(tp.path.end(q)) {
            by_vertex[q.arrow(a).target].push(tp.then(a));
        }
    }
    let need: Vec<usize> = s.layer(l + 1).iter().map(|&x| x as usize).collect();
    if (0..n).any(|v| by_vertex[v].len() < need[v]) {
        return true;
    }
    let mut chosen: Vec<Vec<usize>> = Vec::with_capacity(n);
    choose_per_vertex(&by_vertex, &need, &mut chosen, &mut |picks| {
        let next: Vec<TopPath> = picks
            .iter()
            .enumerate()
            .flat_map(|(v, idx)| idx.iter().map(move |&i| (v, i)))
            .map(|(v, i)| by_vertex[v][i].clone())
            .collect();
        let mark = acc.len();
        acc.extend(next.iter().cloned());
        let go = extend_layers(s, alg, tops, l + 1, next, acc, visit);
        acc.truncate(mark);
        go
    })
}

fn choose_per_vertex<F>(cands: &[Vec<TopPath>], need: &[usize], chosen: &mut Vec<Vec<usize>>, f: &mut F) -> bool
where
    F: FnMut(&[Vec<usize>]) -> bool,
{
    let v = chosen.len();
    if v == cands.len() {
        return f(chosen);
    }
    let mut comb: Vec<usize> = (0..need[v]).collect();
    let total = cands[v].len();
    loop {
        chosen.push(comb.clone());
        let go = choose_per_vertex(cands, need, chosen, f);
        chosen.pop();
        if !go {
            return false;
        }
        // next k-combination of 0..total in lexicographic order
        let k = comb.len();
        let Some(i) = (0..k).rev().find(|&i| comb[i] < total - k + i) else {
            return true;
        };
        comb[i] += 1;
        for j in i + 1..k {
            comb[j] = comb[j - 1] + 1;
        }
    }
}

/// All skeleta with layering `s`; empty iff `s` is not realizable.
pub fn enumerate_skeleta(s: &SemisimpleSequence, alg: &TruncatedAlgebra) -> Vec<Skeleton> {
    let mut out = Vec::new();
    for_each_skeleton(s, alg, &mut |sk| {
        out.push(sk);
        true
    });
    out
}

/// Like [`enumerate_skeleta`] but refuses once more than `cap` exist.
pub fn enumerate_skeleta_capped(s: &SemisimpleSequence, alg: &TruncatedAlgebra, cap: u128) -> Result<Vec<Skeleton>> {
    let count = count_skeleta(s, alg);
    if count > cap {
        return Err(Error::EnumerationCapExceeded { count, cap });
    }
    Ok(enumerate_skeleta(s, alg))
}

pub fn first_skeleton(s: &SemisimpleSequence, alg: &TruncatedAlgebra) -> Option<Skeleton> {
    let mut first = None;
    for_each_skeleton(s, alg, &mut |sk| {
        first = Some(sk);
        false
    });
    first
}

/// Paths one arrow outside the skeleton, of length at most `L`, sorted.
pub fn critical_paths(sk: &Skeleton, alg: &TruncatedAlgebra) -> Vec<TopPath> {
    let q = alg.quiver();
    let mut out: Vec<TopPath> = sk
        .paths
        .iter()
        .filter(|tp| tp.len() < alg.loewy_bound())
        .flat_map(|tp| q.arrows_from(tp.path.end(q)).map(move |a| tp.then(a)))
        .filter(|c| !sk.contains(c))
        .collect();
    out.sort();
    out
}

/// `critical = Σ x_param · path` over the listed terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub critical: TopPath,
    /// (parameter index, skeleton path), parameters numbered from 0.
    pub terms: Vec<(usize, TopPath)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericPresentation {
    pub algebra: TruncatedAlgebra,
    pub layering: SemisimpleSequence,
    pub skeleton: Skeleton,
    pub relations: Vec<Relation>,
    pub parameter_count: usize,
}

/// One relation per critical path, expanding over skeleton paths that end at
/// the same vertex and are at least as long. Uses the first skeleton if
/// none is given.
pub fn generic_presentation(
    s: &SemisimpleSequence,
    alg: &TruncatedAlgebra,
    sk: Option<Skeleton>,
) -> Result<GenericPresentation> {
    if s.vertex_count() != alg.vertex_count() {
        return Err(Error::SizeMismatch {
            expected: alg.vertex_count(),
            found: s.vertex_count(),
        });
    }
    if s.loewy_bound() != alg.loewy_bound() {
        return Err(Error::LayerCountMismatch {
            expected: alg.loewy_bound() + 1,
            found: s.layers().len(),
        });
    }
    if !is_realizable(s, alg) {
        return Err(Error::NotRealizable);
    }
    let skeleton = match sk {
        Some(sk) => {
            if sk.layering(alg) != *s || !sk.is_well_formed(alg) {
                return Err(Error::NotRealizable);
            }
            sk
        }
        None => first_skeleton(s, alg).ok_or(Error::NotRealizable)?,
    };
    let q = alg.quiver();
    let mut next_param = 0;
    let relations = critical_paths(&skeleton, alg)
        .into_iter()
        .map(|c| {
            let end = c.path.end(q);
            let terms = skeleton
                .paths
                .iter()
                .filter(|p| p.path.end(q) == end && p.len() >= c.len())
                .map(|p| {
                    next_param += 1;
                    (next_param - 1, p.clone())
                })
                .collect();
            Relation { critical: c, terms }
        })
        .collect();
    Ok(GenericPresentation {
        algebra: alg.clone(),
        layering: s.clone(),
        skeleton,
        relations,
        parameter_count: next_param,
    })
}

impl GenericPresentation {
    /// Plain-text relations, e.g. `b3*z1 - x1*b1*z1 - x2*b2*z1`.
    pub fn render_relations(&self) -> Vec<String> {
        let q = self.algebra.quiver();
        self.relations
            .iter()
            .map(|r| {
                let mut s = r.critical.render(q);
                if r.terms.is_empty() {
                    s.push_str(" = 0");
                }
                for (x, p) in &r.terms {
                    s.push_str(&format!(" - x{}*{}", x + 1, p.render(q)));
                }
                s
            })
            .collect()
    }

    /// The module `P_0 / R(σ)` with the given parameter values, as arrow
    /// matrices in the skeleton basis grouped by end vertex.
    pub fn realize(&self, p: Prime, values: &[u64]) -> Result<Representation> {
        if values.len() < self.parameter_count {
            return Err(Error::MissingParameter(values.len()));
        }
        let q = self.algebra.quiver();
        let n = q.vertex_count();
        let mut local: HashMap<&TopPath, usize> = HashMap::new();
        let mut dims = vec![0u32; n];
        for tp in &self.skeleton.paths {
            let v = tp.path.end(q);
            local.insert(tp, dims[v] as usize);
            dims[v] += 1;
        }
        let by_critical: HashMap<&TopPath, &Relation> = self.relations.iter().map(|r| (&r.critical, r)).collect();
        let mut maps: Vec<Matrix> = q
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(p, dims[a.target] as usize, dims[a.source] as usize))
            .collect();
        for tp in &self.skeleton.paths {
            let col = local[tp];
            for a in q.arrows_from(tp.path.end(q)) {
                let next = tp.then(a);
                if let Some(&row) = local.get(&next) {
                    maps[a].set(row, col, 1);
                } else if let Some(rel) = by_critical.get(&next) {
                    for (x, term) in &rel.terms {
                        let row = local[term];
                        let v = p.add(maps[a].get(row, col), values[*x] % p.value());
                        maps[a].set(row, col, v);
                    }
                }
                // otherwise the path is longer than L and acts by zero
            }
        }
        Ok(crate::repfield::Representation::new_unchecked(
            self.algebra.clone(),
            p,
            DimVector::new(dims),
            maps,
        ))
    }

    /// Random nonzero parameters, redrawn until the module has the intended
    /// radical layering.
    pub fn specialize(&self, p: Prime, seed: u64, retries: usize) -> Result<Specialization> {
        for attempt in 0..retries.max(1) {
            let mut rng = rng_for(seed, tags::SPECIALIZE, attempt as u64);
            let values: Vec<u64> = (0..self.parameter_count).map(|_| p.random_nonzero(&mut rng)).collect();
            let module = self.realize(p, &values)?;
            if module.radical_layering() == self.layering {
                return Ok(Specialization {
                    module,
                    values,
                    attempts: attempt + 1,
                });
            }
        }
        Err(Error::RetryBudgetExhausted(retries.max(1)))
    }
}

#[derive(Debug, Clone)]
pub struct Specialization {
    pub module: Representation,
    pub values: Vec<u64>,
    pub attempts: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex29(l: usize) -> TruncatedAlgebra {
        let q = Quiver::from_edges(
            2,
            &[("a1", 1, 2), ("a2", 1, 2), ("b1", 2, 1), ("b2", 2, 1), ("b3", 2, 1)],
        )
        .unwrap();
        TruncatedAlgebra::new(q, l)
    }

    fn seq(text: &str, alg: &TruncatedAlgebra) -> SemisimpleSequence {
        SemisimpleSequence::parse(text, alg.vertex_count(), alg.loewy_bound()).unwrap()
    }

    #[test]
    fn skeleton_counts_from_the_two_vertex_example() {
        let alg = ex29(3);
        let s = seq("2:1;1:2;;", &alg);
        let all = enumerate_skeleta(&s, &alg);
        assert_eq!(all.len(), 3);
        assert_eq!(count_skeleta(&s, &alg), 3);
        let s4 = seq("2:1;1:2;2:1;", &alg);
        let all = enumerate_skeleta(&s4, &alg);
        assert_eq!(all.len(), 12);
        assert!(all.iter().all(|sk| sk.is_well_formed(&alg) && sk.layering(&alg) == s4));
        let unique: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(unique.len(), 12);
    }

    #[test]
    fn semisimple_layering_has_one_skeleton() {
        let alg = ex29(3);
        let s = seq("1:2,2:1;;;", &alg);
        let all = enumerate_skeleta(&s, &alg);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].len(), 3);
        let gp = generic_presentation(&s, &alg, None).unwrap();
        assert!(gp.relations.iter().all(|r| r.terms.is_empty()));
        assert_eq!(gp.relations.len(), 2 * 2 + 3);
        let m = gp.realize(Prime::new(10007).unwrap(), &[]).unwrap();
        assert!(m.maps().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn unrealizable_has_no_skeleton() {
        let alg = ex29(3);
        let s = seq("1:1;2:1;2:1;1:1", &alg);
        assert!(enumerate_skeleta(&s, &alg).is_empty());
        assert!(generic_presentation(&s, &alg, None).is_err());
    }

    #[test]
    fn first_skeleton_and_relations_for_s4() {
        let alg = ex29(3);
        let s = seq("2:1;1:2;2:1;", &alg);
        let gp = generic_presentation(&s, &alg, None).unwrap();
        assert_eq!(gp.skeleton.render(alg.quiver()), "z1, b1*z1, b2*z1, a1*b1*z1");
        assert_eq!(gp.parameter_count, 5);
        let text = gp.render_relations();
        assert_eq!(
            text,
            vec![
                "b3*z1 - x1*b1*z1 - x2*b2*z1",
                "a2*b1*z1 - x3*a1*b1*z1",
                "a1*b2*z1 - x4*a1*b1*z1",
                "a2*b2*z1 - x5*a1*b1*z1",
                "b1*a1*b1*z1 = 0",
                "b2*a1*b1*z1 = 0",
                "b3*a1*b1*z1 = 0",
            ]
        );
    }

    #[test]
    fn specialization_hits_the_layering() {
        let alg = ex29(3);
        let s = seq("2:1;1:2;2:1;", &alg);
        let gp = generic_presentation(&s, &alg, None).unwrap();
        let sp = gp.specialize(Prime::new(10007).unwrap(), 5, DEFAULT_RETRIES).unwrap();
        assert_eq!(sp.module.radical_layering(), s);
        assert_eq!(sp.module.dim(), &DimVector::new(vec![2, 2]));
    }
}
