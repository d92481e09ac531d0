#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use repvar::{DimVector, Prime, Quiver, SemisimpleSequence, TruncatedAlgebra};

pub fn kronecker() -> Quiver {
    Quiver::from_edges(2, &[("a", 1, 2), ("b", 1, 2)]).unwrap()
}

pub fn a3() -> Quiver {
    Quiver::from_edges(3, &[("a", 1, 2), ("b", 2, 3)]).unwrap()
}

/// Two vertices, two arrows one way and three back.
pub fn two_cycle() -> Quiver {
    Quiver::from_edges(
        2,
        &[("a1", 1, 2), ("a2", 1, 2), ("b1", 2, 1), ("b2", 2, 1), ("b3", 2, 1)],
    )
    .unwrap()
}

pub fn chain_with_cycle() -> Quiver {
    Quiver::from_edges(4, &[("a", 1, 2), ("b", 2, 3), ("d", 3, 2), ("g", 3, 4)]).unwrap()
}

pub fn acyclic_quivers() -> Vec<Quiver> {
    vec![
        kronecker(),
        a3(),
        Quiver::from_edges(3, &[("a", 1, 2), ("b", 1, 3), ("c", 2, 3)]).unwrap(),
        Quiver::from_edges(3, &[("a", 2, 1), ("b", 2, 3)]).unwrap(),
    ]
}

pub fn quivers() -> Vec<Quiver> {
    let mut out = acyclic_quivers();
    out.extend([two_cycle(), chain_with_cycle(), Quiver::local(1), Quiver::local(2)]);
    out
}

/// Truncated algebras exercised by the property suites.
pub fn algebras() -> Vec<TruncatedAlgebra> {
    let mut out = Vec::new();
    for q in quivers() {
        for l in 1..=3 {
            out.push(TruncatedAlgebra::new(q.clone(), l));
        }
    }
    out
}

pub fn acyclic_algebras() -> Vec<TruncatedAlgebra> {
    let mut out = Vec::new();
    for q in acyclic_quivers() {
        for l in 1..=2 {
            out.push(TruncatedAlgebra::new(q.clone(), l));
        }
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_prime() -> Prime {
    Prime::new(3).unwrap()
}

pub fn random_dim<R: Rng>(n: usize, max_total: u32, rng: &mut R) -> DimVector {
    let mut d = vec![0u32; n];
    let total = rng.gen_range(1..=max_total);
    for _ in 0..total {
        d[rng.gen_range(0..n)] += 1;
    }
    DimVector::new(d)
}

/// Places every unit of `d` in a uniformly random layer.
pub fn random_sequence<R: Rng>(d: &DimVector, loewy_bound: usize, rng: &mut R) -> SemisimpleSequence {
    let n = d.len();
    let mut layers = vec![vec![0u32; n]; loewy_bound + 1];
    for (v, &k) in d.iter().enumerate() {
        for _ in 0..k {
            layers[rng.gen_range(0..=loewy_bound)][v] += 1;
        }
    }
    SemisimpleSequence::new(layers.into_iter().map(DimVector::new).collect()).unwrap()
}

/// Biases towards realizable sequences by filling layers top-down.
pub fn random_realizable<R: Rng>(alg: &TruncatedAlgebra, max_total: u32, rng: &mut R) -> SemisimpleSequence {
    let n = alg.vertex_count();
    let a = alg.quiver().adjacency_matrix();
    loop {
        let mut layers = vec![vec![0u32; n]; alg.loewy_bound() + 1];
        let mut left = rng.gen_range(1..=max_total);
        let top = rng.gen_range(1..=left);
        for _ in 0..top {
            layers[0][rng.gen_range(0..n)] += 1;
        }
        left -= top;
        for l in 1..=alg.loewy_bound() {
            let reach: Vec<i64> = DimVector::new(layers[l - 1].clone()).times(&a);
            for _ in 0..left {
                let open: Vec<usize> = (0..n).filter(|&v| (layers[l][v] as i64) < reach[v]).collect();
                if open.is_empty() || rng.gen_bool(0.3) {
                    break;
                }
                layers[l][open[rng.gen_range(0..open.len())]] += 1;
            }
            left -= layers[l].iter().sum::<u32>();
        }
        if left == 0 {
            return SemisimpleSequence::new(layers.into_iter().map(DimVector::new).collect()).unwrap();
        }
    }
}

/// A specialized generic module for a random realizable sequence, sometimes
/// summed with a second one; `None` when specialization runs out of retries.
pub fn random_module<R: Rng>(
    alg: &TruncatedAlgebra,
    max_total: u32,
    p: Prime,
    rng: &mut R,
) -> Option<repvar::repfield::Representation> {
    let one = |rng: &mut R| {
        let s = random_realizable(alg, max_total, rng);
        let gp = repvar::skeleta::generic_presentation(&s, alg, None).ok()?;
        gp.specialize(p, rng.gen(), 20).ok().map(|sp| sp.module)
    };
    let m = one(rng)?;
    if m.dim().total() < max_total && rng.gen_bool(0.3) {
        let n = one(rng)?;
        if m.dim().total() + n.dim().total() <= max_total + 1 {
            return m.direct_sum(&n).ok();
        }
    }
    Some(m)
}

/// Random invertible matrices, one per vertex.
pub fn random_basis_change<R: Rng>(d: &DimVector, p: Prime, rng: &mut R) -> Vec<repvar::Matrix> {
    d.iter()
        .map(|&k| loop {
            let g = repvar::Matrix::random(p, k as usize, k as usize, rng);
            if g.rank() == k as usize {
                break g;
            }
        })
        .collect()
}
