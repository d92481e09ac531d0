//! End-to-end acceptance checks. Runs as a plain binary and prints one
//! PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use repvar::components::{
    components_auto, components_local, decide, filtration_tallies, local_rad_square_zero_count, ComponentConfig,
    Coverage, DetectionRoute, Indecomposability, Mode,
};
use repvar::hereditary::{
    canonical_decomposition, generic_ext, mu_generic_params, sub_dimension_vectors, SamplingConfig,
};
use repvar::layers::{dominance_leq, generic_socle_layering, is_realizable};
use repvar::repfield::{filtration_count, filtration_exists, gamma, Representation, DEFAULT_SEARCH_CAP};
use repvar::skeleta::{enumerate_skeleta, generic_presentation, DEFAULT_RETRIES};
use repvar::{DimVector, Path, Prime, Quiver, SemisimpleSequence, TruncatedAlgebra};
use repvar_cli::{parse_algebra, run, AlgebraSource, Command, Format, JobConfig};

type Check = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Check);

fn fixture(name: &str) -> TruncatedAlgebra {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    parse_algebra(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn seq(text: &str, alg: &TruncatedAlgebra) -> SemisimpleSequence {
    SemisimpleSequence::parse(text, alg.vertex_count(), alg.loewy_bound()).unwrap()
}

fn quiet(seed: u64) -> ComponentConfig {
    ComponentConfig {
        seed,
        annotate: false,
        ..Default::default()
    }
}

fn labels(out: &repvar::components::GeneralOutcome) -> Vec<String> {
    out.components.iter().map(|c| c.radical_layering.render()).collect()
}

fn c1() -> Check {
    let direct = components_local(3, 2, 10).len();
    let alg = fixture("local_r3.alg");
    let out = components_auto(&alg, &DimVector::new(vec![10]), Mode::Auto, &quiet(0)).map_err(|e| e.to_string())?;
    ensure(direct == 17 && out.components.len() == 17, || {
        format!(
            "expected 17 components, closed form {direct}, pipeline {}",
            out.components.len()
        )
    })?;
    Ok("17 components".into())
}

fn c2() -> Check {
    let d = DimVector::new(vec![1; 7]);
    let l5 = components_auto(&fixture("ex811_l5.alg"), &d, Mode::Auto, &quiet(0)).map_err(|e| e.to_string())?;
    let l3 = components_auto(&fixture("ex811_l3.alg"), &d, Mode::Auto, &ComponentConfig::default())
        .map_err(|e| e.to_string())?;
    let indec = l3
        .components
        .iter()
        .filter(|c| c.indecomposability == Indecomposability::GenericIndecomposable)
        .count();
    ensure(l5.components.len() == 6 && l3.components.len() == 28, || {
        format!(
            "L=5: {} (want 6), L=3: {} (want 28)",
            l5.components.len(),
            l3.components.len()
        )
    })?;
    ensure(indec == 12, || {
        format!("L=3: {indec} generically indecomposable, want 12")
    })?;
    Ok("L=5: 6, L=3: 28 (12 generically indecomposable)".into())
}

fn c3() -> Check {
    let alg = fixture("ex812.alg");
    let out = components_auto(&alg, &DimVector::new(vec![1; 4]), Mode::Auto, &quiet(0)).map_err(|e| e.to_string())?;
    let got: Vec<(String, DetectionRoute)> = out
        .components
        .iter()
        .map(|c| (c.radical_layering.render(), c.detection_route))
        .collect();
    let want = vec![
        ("1:1;2:1;3:1;4:1".to_string(), DetectionRoute::ThetaMinimal),
        ("1:1,3:1;2:1,4:1;;".to_string(), DetectionRoute::GammaCertified),
    ];
    ensure(got == want && out.undecided().count() == 0, || format!("got {got:?}"))?;
    Ok("(S1,S2,S3,S4) theta-minimal, (S1+S3,S2+S4,0,0) gamma-certified".into())
}

fn c4() -> Check {
    let alg = fixture("ex817.alg");
    let cfg = quiet(0);
    let out = components_auto(&alg, &DimVector::new(vec![2, 2]), Mode::Auto, &cfg).map_err(|e| e.to_string())?;
    let got = labels(&out);
    ensure(got.len() == 5 && out.undecided().count() == 0, || {
        format!("got {got:?}")
    })?;
    for must in ["2:1;1:2;2:1;", "2:2;1:2;;"] {
        ensure(got.iter().any(|s| s == must), || format!("{must} missing from {got:?}"))?;
    }
    ensure(!got.iter().any(|s| s == "1:2;2:2;;"), || {
        "(S1^2,S2^2,0,0) accepted".into()
    })?;

    // Γ ≥ 2 on a specialized generic module; the witnessing filtration is
    // only rational over F_p for some parameter values, so scan specializations.
    let s = seq("1:2;2:2;;", &alg);
    let witness = seq("1:1;2:1;1:1;2:1", &alg);
    let gp = generic_presentation(&s, &alg, None).map_err(|e| e.to_string())?;
    let p = Prime::new(11).unwrap();
    let mut found = None;
    for seed in 0..32 {
        let Ok(sp) = gp.specialize(p, seed, DEFAULT_RETRIES) else {
            continue;
        };
        let g = gamma(&sp.module, DEFAULT_SEARCH_CAP).map_err(|e| e.to_string())?;
        if g.count >= 2 && g.witnesses.contains(&witness) {
            found = Some((seed, g.count));
            break;
        }
    }
    let (seed, count) = found.ok_or("no specialization over F_11 exhibits the witness")?;
    let verdict = decide(&filtration_tallies(&gp, &witness, &cfg).map_err(|e| e.to_string())?);
    ensure(verdict == Coverage::Covered, || {
        format!("filtration tallies give {verdict:?}")
    })?;
    Ok(format!(
        "5 components; gamma = {count} at seed {seed} with witness (S1,S2,S1,S2)"
    ))
}

fn c5() -> Check {
    let alg = fixture("ex817.alg");
    let s = seq("2:1;1:2;2:1;", &alg);
    let gp = generic_presentation(&s, &alg, None).map_err(|e| e.to_string())?;
    let rel = gp.render_relations();
    let expected = [
        "b3*z1 - x1*b1*z1 - x2*b2*z1",
        "a2*b2*z1 - x*a1*b1*z1",
        "a1*b2*z1 - x4*a1*b1*z1",
        "a2*b1*z1 - x*a1*b1*z1",
    ];
    let strip = |r: &str| {
        r.split(' ')
            .map(|w| match w.split_once('*') {
                Some((x, rest)) if x.starts_with('x') && x[1..].chars().all(|c| c.is_ascii_digit()) => {
                    format!("x*{rest}")
                }
                _ => w.to_string(),
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    for e in expected {
        let hit = if e.contains("x*") {
            rel.iter().any(|r| strip(r) == e)
        } else {
            rel.iter().any(|r| r == e)
        };
        ensure(hit, || format!("relation {e} missing from {rel:?}"))?;
    }
    let p = Prime::new(10007).unwrap();
    let sp = gp.specialize(p, 0, DEFAULT_RETRIES).map_err(|e| e.to_string())?;
    let q = alg.quiver();
    let arrow = |name: &str| q.arrows().iter().position(|a| a.name == name).unwrap();
    let z = Path::trivial(1);
    let lhs = sp.module.path_matrix(&z.then(arrow("b3")).then(arrow("a1"))).unwrap();
    let base = sp.module.path_matrix(&z.then(arrow("b1")).then(arrow("a1"))).unwrap();
    let x = &sp.values;
    let coef = p.add(x[0], p.mul(x[1], x[3]));
    // z is the first basis vector at vertex 2
    let top = sp.module.dim()[1] as usize;
    let col = |m: &repvar::Matrix| (0..m.rows()).map(|r| m.get(r, 0)).collect::<Vec<_>>();
    ensure(
        top > 0 && col(&lhs) == col(&base).iter().map(|&v| p.mul(coef, v)).collect::<Vec<_>>(),
        || "a1*b3*z differs from (x1 + x2*x4)*a1*b1*z".into(),
    )?;
    ensure(col(&base).iter().any(|&v| v != 0), || "a1*b1*z vanishes".into())?;
    Ok("four relation shapes present; a1*b3*z = (x1 + x2*x4)*a1*b1*z over F_10007".into())
}

fn c6() -> Check {
    let q = fixture("kronecker.alg").quiver().clone();
    let d = DimVector::new(vec![2, 2]);
    let cfg = SamplingConfig {
        samples: 12,
        prime: 32003,
        seed: 0,
    };
    let dec = canonical_decomposition(&q, &d, &cfg, 3).map_err(|e| e.to_string())?;
    let gp = mu_generic_params(&q, &dec).map_err(|e| e.to_string())?;
    ensure(dec.render() == "(1,1)x2" && dec.verified, || {
        format!("decomposition {}", dec.render())
    })?;
    ensure(gp.mu == 2 && !gp.dense_orbit, || {
        format!("mu {} dense {}", gp.mu, gp.dense_orbit)
    })?;
    let mut sub: Vec<String> = sub_dimension_vectors(&q, &d, &cfg)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|v| v.to_string())
        .collect();
    sub.sort();
    let mut want: Vec<String> = ["(0,0)", "(2,2)", "(1,1)", "(1,2)", "(0,1)", "(0,2)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    want.sort();
    ensure(sub == want, || format!("Sub(2,2) = {sub:?}"))?;
    Ok("(1,1)x2, mu = 2, no dense orbit, |Sub(2,2)| = 6".into())
}

fn c7() -> Check {
    let alg = fixture("ex812.alg");
    for (s, want) in [
        ("1:1;2:1;3:1;4:1", "4:1;3:1;2:1;1:1"),
        ("1:1,3:1;2:1,4:1;;", "2:1,4:1;1:1,3:1;;"),
    ] {
        let got = generic_socle_layering(&seq(s, &alg), &alg).map_err(|e| e.to_string())?;
        ensure(got.render() == want, || format!("{s} -> {}, want {want}", got.render()))?;
    }
    Ok("(S4,S3,S2,S1) and (S2+S4,S1+S3,0,0)".into())
}

fn c8() -> Check {
    let mut compared = 0;
    for r in 2..=3usize {
        for l in 1..=2usize {
            let alg = TruncatedAlgebra::new(Quiver::local(r), l);
            for d in 1..=8u32 {
                let dim = DimVector::new(vec![d]);
                let local = components_local(r, l, d).len();
                let general = components_auto(&alg, &dim, Mode::General, &quiet(0)).map_err(|e| e.to_string())?;
                ensure(general.undecided().count() == 0, || {
                    format!("r={r} L={l} d={d}: undecided candidates")
                })?;
                let mut counts = vec![("local", local), ("general", general.components.len())];
                if l == 1 {
                    let rsz = components_auto(&alg, &dim, Mode::RadSquareZero, &quiet(0)).map_err(|e| e.to_string())?;
                    counts.push(("rad-square-zero", rsz.components.len()));
                    if d >= 2 {
                        counts.push(("formula", local_rad_square_zero_count(r as u32, d)));
                    }
                }
                ensure(counts.iter().all(|c| c.1 == local), || {
                    format!("r={r} L={l} d={d}: {counts:?}")
                })?;
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} local instances agree"))
}

// ---- property suites -------------------------------------------------

fn algebras() -> Vec<TruncatedAlgebra> {
    let qs = vec![
        Quiver::from_edges(2, &[("a", 1, 2), ("b", 1, 2)]).unwrap(),
        Quiver::from_edges(3, &[("a", 1, 2), ("b", 2, 3)]).unwrap(),
        Quiver::from_edges(
            2,
            &[("a1", 1, 2), ("a2", 1, 2), ("b1", 2, 1), ("b2", 2, 1), ("b3", 2, 1)],
        )
        .unwrap(),
        Quiver::from_edges(4, &[("a", 1, 2), ("b", 2, 3), ("d", 3, 2), ("g", 3, 4)]).unwrap(),
        Quiver::local(1),
        Quiver::local(2),
    ];
    qs.into_iter()
        .flat_map(|q| (1..=3).map(move |l| TruncatedAlgebra::new(q.clone(), l)))
        .collect()
}

fn random_dim(n: usize, max_total: u32, rng: &mut ChaCha8Rng) -> DimVector {
    let mut d = vec![0u32; n];
    for _ in 0..rng.gen_range(1..=max_total) {
        d[rng.gen_range(0..n)] += 1;
    }
    DimVector::new(d)
}

fn random_sequence(d: &DimVector, l: usize, rng: &mut ChaCha8Rng) -> SemisimpleSequence {
    let mut layers = vec![vec![0u32; d.len()]; l + 1];
    for (v, &k) in d.iter().enumerate() {
        for _ in 0..k {
            layers[rng.gen_range(0..=l)][v] += 1;
        }
    }
    SemisimpleSequence::new(layers.into_iter().map(DimVector::new).collect()).unwrap()
}

/// Retries random sequences until one is realizable.
fn random_realizable(alg: &TruncatedAlgebra, max_total: u32, rng: &mut ChaCha8Rng) -> SemisimpleSequence {
    loop {
        let d = random_dim(alg.vertex_count(), max_total, rng);
        let s = random_sequence(&d, alg.loewy_bound(), rng);
        if is_realizable(&s, alg) {
            return s;
        }
    }
}

fn random_module(alg: &TruncatedAlgebra, max_total: u32, p: Prime, rng: &mut ChaCha8Rng) -> Option<Representation> {
    let s = random_realizable(alg, max_total, rng);
    let gp = generic_presentation(&s, alg, None).ok()?;
    gp.specialize(p, rng.gen(), DEFAULT_RETRIES).ok().map(|sp| sp.module)
}

fn long_paths_vanish(m: &Representation) -> bool {
    let alg = m.algebra();
    let q = alg.quiver();
    (0..q.vertex_count()).all(|v| {
        let mut frontier = vec![Path::trivial(v)];
        for _ in 0..=alg.loewy_bound() {
            frontier = frontier
                .iter()
                .flat_map(|p| q.arrows_from(p.end(q)).map(move |a| p.then(a)))
                .collect();
        }
        frontier.iter().all(|p| m.path_matrix(p).unwrap().is_zero())
    })
}

const CASES: u32 = 200;

fn property<F>(name: &str, test: F) -> Result<(), String>
where
    F: Fn(u64, usize) -> Result<(), TestCaseError>,
{
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&(any::<u64>(), 0usize..18), |(seed, which)| test(seed, which))
        .map_err(|e| format!("{name}: {e}"))
}

fn c9() -> Check {
    let algs = algebras();
    let pick = |i: usize| &algs[i % algs.len()];
    let small = Prime::new(3).unwrap();

    property("dominance order", |seed, which| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = pick(which);
        let d = random_dim(alg.vertex_count(), 6, &mut rng);
        let [a, b, c] = [0; 3].map(|_| random_sequence(&d, alg.loewy_bound(), &mut rng));
        let le = |x: &SemisimpleSequence, y: &SemisimpleSequence| dominance_leq(x, y).unwrap();
        prop_assert!(le(&a, &a));
        if le(&a, &b) && le(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        if le(&a, &b) && le(&b, &c) {
            prop_assert!(le(&a, &c));
        }
        Ok(())
    })?;

    property("realizable iff skeleton", |seed, which| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = pick(which);
        let d = random_dim(alg.vertex_count(), 6, &mut rng);
        let s = random_sequence(&d, alg.loewy_bound(), &mut rng);
        prop_assert_eq!(is_realizable(&s, alg), !enumerate_skeleta(&s, alg).is_empty());
        Ok(())
    })?;

    property("radical layering filtration", |seed, which| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(m) = random_module(pick(which), 5, small, &mut rng) {
            let rad = m.radical_layering();
            prop_assert!(filtration_exists(&m, &rad, DEFAULT_SEARCH_CAP).unwrap());
            prop_assert_eq!(filtration_count(&m, &rad, 2, DEFAULT_SEARCH_CAP).unwrap(), 1);
        }
        Ok(())
    })?;

    property("filtration hit implies dominance", |seed, which| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = pick(which);
        if let Some(m) = random_module(alg, 5, small, &mut rng) {
            let t = random_sequence(m.dim(), alg.loewy_bound(), &mut rng);
            if is_realizable(&t, alg) && filtration_exists(&m, &t, DEFAULT_SEARCH_CAP).unwrap() {
                prop_assert!(dominance_leq(&t, &m.radical_layering()).unwrap());
            }
        }
        Ok(())
    })?;

    property("euler bilinearity", |seed, which| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = pick(which).quiver();
        let n = q.vertex_count();
        let [d, d2, e] = [0; 3].map(|_| random_dim(n, 8, &mut rng));
        let f = |x: &DimVector, y: &DimVector| q.euler_form(x, y).unwrap();
        prop_assert_eq!(f(&d.add(&d2), &e), f(&d, &e) + f(&d2, &e));
        prop_assert_eq!(f(&e, &d.add(&d2)), f(&e, &d) + f(&e, &d2));
        Ok(())
    })?;

    let acyclic: Vec<Quiver> = algs
        .iter()
        .map(|a| a.quiver().clone())
        .filter(Quiver::is_acyclic)
        .collect();
    property("generic ext monotone in samples", |seed, which| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = &acyclic[which % acyclic.len()];
        let d = random_dim(q.vertex_count(), 5, &mut rng);
        let e = random_dim(q.vertex_count(), 5, &mut rng);
        let few = SamplingConfig {
            samples: rng.gen_range(1..6),
            prime: 101,
            seed,
        };
        let more = SamplingConfig {
            samples: few.samples + 3,
            ..few
        };
        prop_assert!(generic_ext(q, &d, &e, &more).unwrap() <= generic_ext(q, &d, &e, &few).unwrap());
        Ok(())
    })?;

    property("specialize is truncation-exact", |seed, which| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(m) = random_module(pick(which), 7, Prime::new(7).unwrap(), &mut rng) {
            prop_assert!(long_paths_vanish(&m));
        }
        Ok(())
    })?;

    let inline = [
        ("kronecker", "vertices: 2\narrow a: 1 -> 2\narrow b: 1 -> 2\n"),
        (
            "two-cycle",
            "vertices: 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nloewy_bound: 3\n",
        ),
        (
            "loops",
            "vertices: 1\narrow x: 1 -> 1\narrow y: 1 -> 1\nloewy_bound: 2\n",
        ),
    ];
    property("deterministic reports", |seed, which| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (label, text) = inline[which % inline.len()];
        let alg = parse_algebra(text).unwrap();
        let d = random_dim(alg.vertex_count(), 4, &mut rng);
        let mut job = JobConfig::new(
            Command::Components,
            AlgebraSource::Inline {
                label: label.into(),
                text: text.into(),
            },
        );
        job.dim = Some(d.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
        job.seed = seed % 1000;
        job.format = Format::Json;
        let a = run(&job).unwrap().render(Format::Json);
        let b = run(&job).unwrap().render(Format::Json);
        prop_assert_eq!(&a, &b);
        Ok(())
    })?;

    Ok(format!("8 suites x {CASES} cases"))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "local r=3, L=2, d=10", Duration::from_secs(1), c1),
        (2, "seven-vertex quiver, L=5 and L=3", Duration::from_secs(60), c2),
        (3, "four-vertex cycle algebra, d=(1,1,1,1)", Duration::from_secs(10), c3),
        (4, "two-vertex algebra, d=(2,2)", Duration::from_secs(60), c4),
        (5, "generic presentation of (S2,S1^2,S2,0)", Duration::from_secs(1), c5),
        (6, "Kronecker d=(2,2)", Duration::from_secs(5), c6),
        (7, "socle layering recursion", Duration::from_secs(60), c7),
        (8, "local cross-validation", Duration::from_secs(120), c8),
        (9, "property suites", Duration::from_secs(600), c9),
    ];
    let mut failed = 0;
    for (n, name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let line = match result {
            Ok(detail) if took <= limit => format!("PASS criterion {n} ({name}): {detail} [{took:.2?}]"),
            Ok(detail) => format!("FAIL criterion {n} ({name}): {detail}, but took {took:.2?} > {limit:?}"),
            Err(why) => format!("FAIL criterion {n} ({name}): {why} [{took:.2?}]"),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
