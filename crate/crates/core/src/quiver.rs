//! Quivers, dimension vectors, paths and truncated path algebras.
//!
//! Vertices are numbered `1..=n` in user-facing text and `0..n` internally.
//! Paths compose like functions: `pq` is "p after q".

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver on vertices `0..vertices`; arrows use 0-based ids.
    pub fn new(vertices: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidQuiver("a quiver needs at least one vertex".into()));
        }
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertices || a.target >= vertices {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} references a vertex outside 1..={}",
                    a.name, vertices
                )));
            }
            if a.name.is_empty() {
                return Err(Error::InvalidQuiver("empty arrow name".into()));
            }
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow name {}", a.name)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Convenience constructor from `(name, source, target)` with 1-based vertices.
    pub fn from_edges(vertices: usize, edges: &[(&str, usize, usize)]) -> Result<Self> {
        let arrows = edges
            .iter()
            .map(|&(name, s, t)| {
                if s == 0 || t == 0 {
                    return Err(Error::InvalidQuiver(format!("arrow {name} uses vertex 0")));
                }
                Ok(Arrow {
                    name: name.to_string(),
                    source: s - 1,
                    target: t - 1,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(vertices, arrows)
    }

    /// One vertex with `r` loops named `a1..ar`.
    pub fn local(r: usize) -> Self {
        let arrows = (1..=r)
            .map(|i| Arrow {
                name: format!("a{i}"),
                source: 0,
                target: 0,
            })
            .collect();
        Quiver { vertices: 1, arrows }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    /// Indices of arrows starting at `v`, in declaration order.
    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
            .map(|(i, _)| i)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.target == v)
            .map(|(i, _)| i)
    }

    /// `A[i][j]` counts arrows `i -> j`.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertices;
        let mut a = vec![vec![0i64; n]; n];
        for arrow in &self.arrows {
            a[arrow.source][arrow.target] += 1;
        }
        a
    }

    /// `<d, e> = sum_i d_i e_i - sum_{a: i -> j} d_i e_j`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        d.check_len(self.vertices)?;
        e.check_len(self.vertices)?;
        let diag: i64 = d.iter().zip(e.iter()).map(|(&x, &y)| x as i64 * y as i64).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|a| d[a.source] as i64 * e[a.target] as i64)
            .sum();
        Ok(diag - off)
    }

    /// The quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    /// Vertices `e_1..e_n, ê_1..ê_n`; each arrow `i -> j` becomes `i -> ê_j`.
    pub fn separated(&self) -> Quiver {
        let n = self.vertices;
        Quiver {
            vertices: 2 * n,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: format!("{}^", a.name),
                    source: a.source,
                    target: n + a.target,
                })
                .collect(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices;
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for a in &self.arrows {
                if a.source == v {
                    indeg[a.target] -= 1;
                    if indeg[a.target] == 0 {
                        stack.push(a.target);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Length of the longest path, or `None` if the quiver has a cycle.
    pub fn longest_path_length(&self) -> Option<usize> {
        let order = self.topological_order()?;
        let mut longest = vec![0usize; self.vertices];
        for &v in &order {
            for a in &self.arrows {
                if a.source == v {
                    longest[a.target] = longest[a.target].max(longest[v] + 1);
                }
            }
        }
        Some(longest.into_iter().max().unwrap_or(0))
    }

    pub fn vertex_label(&self, v: usize) -> String {
        (v + 1).to_string()
    }
}

/// Per-vertex multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// The unit vector `e_v`.
    pub fn unit(n: usize, v: usize) -> Self {
        let mut d = vec![0; n];
        d[v] = 1;
        DimVector(d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u32> {
        self.0.iter()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: self.0.len(),
            });
        }
        Ok(())
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; panics on underflow.
    pub fn sub(&self, other: &DimVector) -> DimVector {
        DimVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_sub(*b).expect("dimension vector underflow"))
                .collect(),
        )
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }

    /// Clamps negative entries to zero.
    pub fn from_i64_clamped(v: &[i64]) -> DimVector {
        DimVector(v.iter().map(|&x| x.max(0) as u32).collect())
    }

    /// Row-vector product `d · M`.
    pub fn times(&self, m: &[Vec<i64>]) -> Vec<i64> {
        let n = m.first().map_or(0, |r| r.len());
        let mut out = vec![0i64; n];
        for (i, &di) in self.0.iter().enumerate() {
            if di == 0 {
                continue;
            }
            for (o, &mij) in out.iter_mut().zip(&m[i]) {
                *o += di as i64 * mij;
            }
        }
        out
    }
}

impl std::ops::Index<usize> for DimVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Splits `d` at a top vector `t` into the separated-quiver vector `(t, d - t)`.
pub fn hat_dim(t: &DimVector, d: &DimVector) -> Result<DimVector> {
    t.check_len(d.len())?;
    if !t.leq(d) {
        return Err(Error::NotBounded);
    }
    let mut v = t.entries().to_vec();
    v.extend(d.entries().iter().zip(t.entries()).map(|(a, b)| a - b));
    Ok(DimVector(v))
}

/// Inverse of [`hat_dim`]: folds `(u, w)` back to `u + w`.
pub fn unhat_dim(dhat: &DimVector) -> Result<DimVector> {
    if !dhat.len().is_multiple_of(2) {
        return Err(Error::SizeMismatch {
            expected: dhat.len() + 1,
            found: dhat.len(),
        });
    }
    let n = dhat.len() / 2;
    Ok(DimVector((0..n).map(|i| dhat[i] + dhat[n + i]).collect()))
}

/// `KQ` modulo all paths of length `L + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedAlgebra {
    quiver: Quiver,
    loewy_bound: usize,
}

impl TruncatedAlgebra {
    pub fn new(quiver: Quiver, loewy_bound: usize) -> Self {
        TruncatedAlgebra { quiver, loewy_bound }
    }

    /// The path algebra of an acyclic quiver, truncated at its longest path.
    pub fn hereditary(quiver: Quiver) -> Result<Self> {
        let l = quiver.longest_path_length().ok_or(Error::CyclicQuiver)?;
        Ok(TruncatedAlgebra::new(quiver, l))
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// `L`, with `J^{L+1} = 0`.
    pub fn loewy_bound(&self) -> usize {
        self.loewy_bound
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn opposite(&self) -> TruncatedAlgebra {
        TruncatedAlgebra::new(self.quiver.opposite(), self.loewy_bound)
    }

    pub fn is_local(&self) -> bool {
        self.quiver.vertex_count() == 1
    }

    /// All paths from `from` of length `0..=max_len`, ordered by length and
    /// then by arrow indices in application order.
    pub fn enumerate_paths(&self, from: usize, max_len: usize) -> Vec<Path> {
        let max_len = max_len.min(self.loewy_bound);
        let mut out = vec![Path::trivial(from)];
        let mut frontier = vec![Path::trivial(from)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.quiver.arrows_from(p.end(&self.quiver)) {
                    next.push(p.then(a));
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

/// A path given by its start vertex and arrows in application order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            start: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Same as [`Path::is_trivial`]: a path of length zero.
    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrow(a).target)
    }

    /// `arrow · self`: apply `arrow` after this path.
    pub fn then(&self, arrow: usize) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(arrow);
        Path {
            start: self.start,
            arrows,
        }
    }

    /// Composable check against a quiver.
    pub fn is_valid(&self, q: &Quiver) -> bool {
        let mut v = self.start;
        for &a in &self.arrows {
            if a >= q.arrows().len() || q.arrow(a).source != v {
                return false;
            }
            v = q.arrow(a).target;
        }
        v < q.vertex_count()
    }

    /// Function-composition notation, e.g. `a1*b1` for "b1 then a1";
    /// the trivial path prints as `e2`.
    pub fn render(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", self.start + 1);
        }
        self.arrows
            .iter()
            .rev()
            .map(|&a| q.arrow(a).name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.arrows.len(), self.start, &self.arrows).cmp(&(other.arrows.len(), other.start, &other.arrows))
    }
}
