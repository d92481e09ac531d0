mod common;

use proptest::prelude::*;
use rand::Rng;
use repvar::layers::{
    dominance_leq, enumerate_sequences, generic_socle_layering, is_realizable, minimal_indices, LayeringPair,
};
use repvar::skeleta::{count_skeleta, enumerate_skeleta};
use repvar::{DimVector, SemisimpleSequence};

/// Moves `k` random units one layer up; the result dominates the input.
fn lift<R: Rng>(s: &SemisimpleSequence, k: usize, rng: &mut R) -> SemisimpleSequence {
    let mut layers: Vec<Vec<u32>> = s.layers().iter().map(|l| l.entries().to_vec()).collect();
    for _ in 0..k {
        let spots: Vec<(usize, usize)> = (1..layers.len())
            .flat_map(|l| (0..layers[l].len()).map(move |v| (l, v)))
            .filter(|&(l, v)| layers[l][v] > 0)
            .collect();
        if spots.is_empty() {
            break;
        }
        let (l, v) = spots[rng.gen_range(0..spots.len())];
        layers[l][v] -= 1;
        layers[l - 1][v] += 1;
    }
    SemisimpleSequence::new(layers.into_iter().map(DimVector::new).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dominance_is_a_partial_order(seed: u64, n in 1usize..=3, l in 1usize..=3) {
        let mut rng = common::rng(seed);
        let d = common::random_dim(n, 6, &mut rng);
        let s = common::random_sequence(&d, l, &mut rng);
        let t = lift(&s, rng.gen_range(0..4), &mut rng);
        let u = lift(&t, rng.gen_range(0..4), &mut rng);
        let w = common::random_sequence(&d, l, &mut rng);

        prop_assert!(dominance_leq(&s, &s).unwrap());
        prop_assert!(dominance_leq(&s, &t).unwrap());
        prop_assert!(dominance_leq(&t, &u).unwrap());
        prop_assert!(dominance_leq(&s, &u).unwrap());
        if s != t {
            prop_assert!(!dominance_leq(&t, &s).unwrap());
        }
        for x in [&s, &t, &u] {
            if dominance_leq(x, &w).unwrap() && dominance_leq(&w, x).unwrap() {
                prop_assert_eq!(x, &w);
            }
            if dominance_leq(x, &w).unwrap() {
                prop_assert!(dominance_leq(&s, &w).unwrap() || !dominance_leq(&s, x).unwrap());
            }
        }
    }

    #[test]
    fn realizable_iff_a_skeleton_exists(seed: u64, which in 0usize..24) {
        let algs = common::algebras();
        let alg = &algs[which % algs.len()];
        let mut rng = common::rng(seed);
        let s = if rng.gen_bool(0.5) {
            common::random_realizable(alg, 6, &mut rng)
        } else {
            let d = common::random_dim(alg.vertex_count(), 6, &mut rng);
            common::random_sequence(&d, alg.loewy_bound(), &mut rng)
        };
        let skeleta = enumerate_skeleta(&s, alg);
        prop_assert_eq!(is_realizable(&s, alg), !skeleta.is_empty());
        prop_assert_eq!(count_skeleta(&s, alg), skeleta.len() as u128);
        for sk in &skeleta {
            prop_assert!(sk.is_well_formed(alg));
            prop_assert_eq!(&sk.layering(alg), &s);
        }
    }

    #[test]
    fn socle_layering_keeps_the_total(seed: u64, which in 0usize..24) {
        let algs = common::algebras();
        let alg = &algs[which % algs.len()];
        let mut rng = common::rng(seed);
        let s = common::random_realizable(alg, 8, &mut rng);
        let star = generic_socle_layering(&s, alg).unwrap();
        prop_assert_eq!(star.total(), s.total());
        prop_assert_eq!(star.loewy_bound(), s.loewy_bound());
    }

    #[test]
    fn minimal_pairs_are_self_dual(seed: u64, which in 0usize..8) {
        let algs = common::acyclic_algebras();
        let alg = &algs[which % algs.len()];
        let op = alg.opposite();
        let mut rng = common::rng(seed);
        let d = common::random_dim(alg.vertex_count(), 4, &mut rng);
        let pairs: Vec<LayeringPair> = enumerate_sequences(&d, alg.loewy_bound())
            .into_iter()
            .filter(|s| is_realizable(s, alg))
            .map(|s| LayeringPair::generic(&s, alg).unwrap())
            .collect();
        for i in minimal_indices(&pairs) {
            let back = generic_socle_layering(&pairs[i].socle, &op).unwrap();
            prop_assert_eq!(&back, &pairs[i].radical);
        }
    }
}
