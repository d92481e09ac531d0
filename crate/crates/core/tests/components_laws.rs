mod common;

use proptest::prelude::*;
use repvar::components::{
    components_auto, uncovered_sequences, ComponentConfig, ComponentReport, DetectionRoute, Mode,
};
use repvar::layers::{generic_socle_layering, LayeringPair};
use repvar::{DimVector, TruncatedAlgebra};

fn config(seed: u64) -> ComponentConfig {
    ComponentConfig {
        seed,
        annotate: false,
        ..Default::default()
    }
}

fn pair(c: &ComponentReport) -> LayeringPair {
    LayeringPair::new(c.radical_layering.clone(), c.socle_layering.clone()).unwrap()
}

fn check_reports(alg: &TruncatedAlgebra, comps: &[ComponentReport]) -> Result<(), TestCaseError> {
    for c in comps {
        prop_assert_eq!(
            &c.socle_layering,
            &generic_socle_layering(&c.radical_layering, alg).unwrap()
        );
    }
    for (i, a) in comps.iter().enumerate() {
        for b in &comps[i + 1..] {
            prop_assert_ne!(&a.radical_layering, &b.radical_layering);
            let minimal = |c: &ComponentReport| c.detection_route != DetectionRoute::GammaCertified;
            if minimal(a) && minimal(b) {
                prop_assert!(!pair(a).leq(&pair(b)).unwrap() && !pair(b).leq(&pair(a)).unwrap());
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn components_cover_every_stratum(seed: u64, which in 0usize..24) {
        let algs = common::algebras();
        let alg = &algs[which % algs.len()];
        let mut rng = common::rng(seed);
        let d: DimVector = common::random_dim(alg.vertex_count(), 4, &mut rng);
        let cfg = config(seed);
        let out = components_auto(alg, &d, Mode::Auto, &cfg).unwrap();
        prop_assert_eq!(out.undecided().count(), 0);
        prop_assert!(!out.components.is_empty());
        check_reports(alg, &out.components)?;
        let labels: Vec<_> = out.components.iter().map(|c| c.radical_layering.clone()).collect();
        let missing = uncovered_sequences(alg, &d, &labels, &cfg).unwrap();
        prop_assert!(missing.is_empty(), "uncovered: {:?}", missing.iter().map(|s| s.render()).collect::<Vec<_>>());
    }

    #[test]
    fn forced_general_route_agrees_on_acyclic_input(seed: u64, which in 0usize..8) {
        let algs = common::acyclic_algebras();
        let alg = &algs[which % algs.len()];
        let mut rng = common::rng(seed);
        let d = common::random_dim(alg.vertex_count(), 4, &mut rng);
        let cfg = config(seed);
        let fast = components_auto(alg, &d, Mode::Acyclic, &cfg).unwrap();
        let general = components_auto(alg, &d, Mode::General, &cfg).unwrap();
        let labels = |o: &repvar::components::GeneralOutcome| {
            let mut v: Vec<_> = o.components.iter().map(|c| c.radical_layering.clone()).collect();
            v.sort();
            v
        };
        prop_assert_eq!(labels(&fast), labels(&general));
    }
}
