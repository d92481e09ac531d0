//! Irreducible components of `Rep_d(Λ)` for truncated path algebras.
//!
//! Four routes: the closed-form local list, minimal `(S, S*)` pairs for
//! acyclic quivers, top/socle containment when `J^2 = 0`, and the layered
//! rigidity search for arbitrary truncated algebras.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::hereditary::{self, CanonicalDecomposition, SamplingConfig};
use crate::layers::{
    self, enumerate_sequences_capped, generic_socle_layering, is_realizable, minimal_indices, LayeringPair,
    SemisimpleSequence, DEFAULT_SEQUENCE_CAP,
};
use crate::quiver::{hat_dim, unhat_dim, DimVector, Quiver, TruncatedAlgebra};
use crate::repfield::{self, end_dim, filtration_exists, fitting_decompose, Representation, DEFAULT_SEARCH_CAP};
use crate::rng::{derive_seed, tags};
use crate::skeleta::{generic_presentation, GenericPresentation, Skeleton, DEFAULT_RETRIES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DetectionRoute {
    Local,
    AcyclicTheta,
    RadSquareZero,
    ThetaMinimal,
    GammaCertified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    Exact,
    FpSpecialization,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Indecomposability {
    /// Sampled `dim End = 1`.
    GenericIndecomposable,
    /// The sampled module split.
    Decomposes,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub radical_layering: SemisimpleSequence,
    pub socle_layering: SemisimpleSequence,
    pub skeleton: Skeleton,
    pub presentation: GenericPresentation,
    /// `None` if no specialization hit the layering.
    pub sampled_end_dim: Option<usize>,
    pub indecomposability: Indecomposability,
    pub kac_summands: Option<Vec<DimVector>>,
    /// Canonical decomposition of the hatted vector on the separated quiver.
    pub separated_decomposition: Option<CanonicalDecomposition>,
    pub mu: Option<i64>,
    pub dense_orbit: Option<bool>,
    pub detection_route: DetectionRoute,
    pub certification: Certification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentConfig {
    /// Prime for sampled invariants.
    pub prime: u64,
    /// Primes for the exhaustive filtration search.
    pub small_primes: Vec<u64>,
    /// Specializations tried per small prime.
    pub trials: usize,
    pub seed: u64,
    pub search_cap: u64,
    pub sequence_cap: u128,
    pub retries: usize,
    /// Samples for hereditary estimates on the separated quiver.
    pub samples: usize,
    /// Fill in skeleton, presentation and sampled invariants.
    pub annotate: bool,
}

impl Default for ComponentConfig {
    fn default() -> Self {
        ComponentConfig {
            prime: 10007,
            small_primes: vec![11, 13],
            trials: 32,
            seed: 0,
            search_cap: DEFAULT_SEARCH_CAP,
            sequence_cap: DEFAULT_SEQUENCE_CAP,
            retries: DEFAULT_RETRIES,
            samples: hereditary::DEFAULT_SAMPLES,
            annotate: true,
        }
    }
}

fn seq_tag(s: &SemisimpleSequence) -> u64 {
    s.layers()
        .iter()
        .flat_map(|d| d.iter())
        .fold(0xcbf2_9ce4_8422_2325u64, |h, &x| {
            (h ^ x as u64).wrapping_mul(0x0000_0100_0000_01b3)
        })
}

/// Layerings of the components for `r` loops, Loewy bound `L`, dimension `d`.
pub fn components_local(r: usize, loewy_bound: usize, d: u32) -> Vec<SemisimpleSequence> {
    let l1 = loewy_bound + 1;
    let mk = |v: Vec<u32>| {
        SemisimpleSequence::new(v.into_iter().map(|x| DimVector::new(vec![x])).collect()).expect("one vertex")
    };
    if d as usize <= l1 {
        return vec![mk((0..l1).map(|l| u32::from((l as u32) < d)).collect())];
    }
    if r <= 1 {
        let (q, s) = (d / l1 as u32, d % l1 as u32);
        return vec![mk((0..l1).map(|l| q + u32::from((l as u32) < s)).collect())];
    }
    let r = r as u32;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l1);
    fn rec(l1: usize, r: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == l1 {
            let prev = *cur.last().expect("nonempty");
            if left >= 1 && left <= r * prev && prev <= r * left {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let slots_after = (l1 - cur.len() - 1) as u32;
        for a in 1..=left.saturating_sub(slots_after) {
            if let Some(&prev) = cur.last() {
                if a > r * prev || prev > r * a {
                    continue;
                }
            }
            cur.push(a);
            rec(l1, r, left - a, cur, out);
            cur.pop();
        }
    }
    rec(l1, r, d, &mut cur, &mut out);
    out.into_iter().map(mk).collect()
}

/// `#{(u, v) : u + v = d, u ≤ r·v, v ≤ r·u}`, the component count of a
/// local algebra with `J^2 = 0` and `r` loops, valid for `d ≥ 2`.
pub fn local_rad_square_zero_count(r: u32, d: u32) -> usize {
    (0..=d).filter(|&u| u <= r * (d - u) && d - u <= r * u).count()
}

fn realizable_pairs(alg: &TruncatedAlgebra, d: &DimVector, cap: u128) -> Result<Vec<LayeringPair>> {
    d.check_len(alg.vertex_count())?;
    let seqs = enumerate_sequences_capped(d, alg.loewy_bound(), cap)?;
    seqs.into_par_iter()
        .filter(|s| is_realizable(s, alg))
        .map(|s| LayeringPair::generic(&s, alg))
        .collect()
}

/// Fills in the presentation and sampled invariants of one component.
pub fn annotate(
    alg: &TruncatedAlgebra,
    s: &SemisimpleSequence,
    route: DetectionRoute,
    certification: Certification,
    cfg: &ComponentConfig,
) -> Result<ComponentReport> {
    let socle = generic_socle_layering(s, alg)?;
    let gp = generic_presentation(s, alg, None)?;
    let (sampled_end_dim, indecomposability) = if cfg.annotate {
        let p = Prime::new(cfg.prime)?;
        let seed = derive_seed(cfg.seed, tags::REPORT, seq_tag(s));
        match gp.specialize(p, seed, cfg.retries) {
            Ok(sp) => {
                let e = end_dim(&sp.module);
                let flag = if e == 1 {
                    Indecomposability::GenericIndecomposable
                } else if fitting_decompose(&sp.module, seed, 8).len() > 1 || splits_over_extension(&sp.module, seed) {
                    Indecomposability::Decomposes
                } else {
                    Indecomposability::Unknown
                };
                (Some(e), flag)
            }
            Err(Error::RetryBudgetExhausted(_)) => (None, Indecomposability::Unknown),
            Err(e) => return Err(e),
        }
    } else {
        (None, Indecomposability::Unknown)
    };
    Ok(ComponentReport {
        radical_layering: s.clone(),
        socle_layering: socle,
        skeleton: gp.skeleton.clone(),
        presentation: gp,
        sampled_end_dim,
        indecomposability,
        kac_summands: None,
        separated_decomposition: None,
        mu: None,
        dense_orbit: None,
        detection_route: route,
        certification,
    })
}

fn splits_over_extension(m: &Representation, seed: u64) -> bool {
    fitting_decompose(m, seed, 8)
        .iter()
        .any(|s| matches!(s.kind, repfield::SummandKind::SplitsOverExtension(_)))
}

/// Local algebra: the closed-form list, annotated.
pub fn components_local_reports(alg: &TruncatedAlgebra, d: u32, cfg: &ComponentConfig) -> Result<Vec<ComponentReport>> {
    if !alg.is_local() {
        return Err(Error::NotLocal(format!("{} vertices", alg.vertex_count())));
    }
    let r = alg.quiver().arrows().len();
    components_local(r, alg.loewy_bound(), d)
        .par_iter()
        .map(|s| annotate(alg, s, DetectionRoute::Local, Certification::Exact, cfg))
        .collect()
}

/// Acyclic quiver: exactly the minimal `(S, S*)` pairs.
pub fn components_acyclic(
    alg: &TruncatedAlgebra,
    d: &DimVector,
    cfg: &ComponentConfig,
) -> Result<Vec<ComponentReport>> {
    if !alg.quiver().is_acyclic() {
        return Err(Error::CyclicQuiver);
    }
    let pairs = realizable_pairs(alg, d, cfg.sequence_cap)?;
    minimal_indices(&pairs)
        .par_iter()
        .map(|&i| {
            annotate(
                alg,
                &pairs[i].radical,
                DetectionRoute::AcyclicTheta,
                Certification::Exact,
                cfg,
            )
        })
        .collect()
}

/// `J^2 = 0`: minimal (top, socle) pairs, enriched through the separated
/// quiver.
pub fn components_rad_square_zero(
    alg: &TruncatedAlgebra,
    d: &DimVector,
    cfg: &ComponentConfig,
) -> Result<Vec<ComponentReport>> {
    if alg.loewy_bound() != 1 {
        return Err(Error::WrongLoewyBound {
            expected: 1,
            found: alg.loewy_bound(),
        });
    }
    let pairs = realizable_pairs(alg, d, cfg.sequence_cap)?;
    let sep = alg.quiver().separated();
    minimal_indices(&pairs)
        .par_iter()
        .map(|&i| {
            let s = &pairs[i].radical;
            let mut report = annotate(alg, s, DetectionRoute::RadSquareZero, Certification::Exact, cfg)?;
            if cfg.annotate {
                enrich_separated(&sep, s, d, &mut report, cfg)?;
            }
            Ok(report)
        })
        .collect()
}

fn enrich_separated(
    sep: &Quiver,
    s: &SemisimpleSequence,
    d: &DimVector,
    report: &mut ComponentReport,
    cfg: &ComponentConfig,
) -> Result<()> {
    let dhat = hat_dim(s.layer(0), d)?;
    let sampling = SamplingConfig {
        samples: cfg.samples,
        prime: hereditary::DEFAULT_PRIME,
        seed: derive_seed(cfg.seed, tags::CANON, seq_tag(s)),
    };
    let canon = hereditary::canonical_decomposition(sep, &dhat, &sampling, hereditary::DEFAULT_ROUNDS)?;
    let mut kac = Vec::new();
    for (v, m) in &canon.summands {
        let back = unhat_dim(v)?;
        kac.extend(std::iter::repeat_n(back, *m as usize));
    }
    let params = hereditary::mu_generic_params(sep, &canon)?;
    report.kac_summands = Some(kac);
    report.mu = Some(params.mu);
    report.dense_orbit = Some(params.dense_orbit);
    report.separated_decomposition = Some(canon);
    Ok(())
}

/// Whether `m` lies in the closure of the component labelled `s` when
/// `J^2 = 0`: its top contains `S_0` and its socle contains `S*_0`.
pub fn membership_rad_square_zero(m: &Representation, s: &SemisimpleSequence) -> Result<bool> {
    let alg = m.algebra();
    if alg.loewy_bound() != 1 {
        return Err(Error::WrongLoewyBound {
            expected: 1,
            found: alg.loewy_bound(),
        });
    }
    if s.total() != *m.dim() {
        return Err(Error::MismatchedTotals);
    }
    let socle = generic_socle_layering(s, alg)?;
    let top = m.radical_layering();
    let soc = m.socle_layering();
    Ok(s.layer(0).leq(top.layer(0)) && socle.layer(0).leq(soc.layer(0)))
}

/// Verdict on whether the generic module of a candidate has a filtration
/// governed by an earlier sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coverage {
    Covered,
    NotCovered,
    Undecided(String),
}

/// Outcome of one small prime: hits out of completed trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeTally {
    pub prime: u64,
    pub hits: usize,
    pub trials: usize,
}

/// Specializes `gp` at each small prime and searches for a filtration
/// governed by `target`.
pub fn filtration_tallies(
    gp: &GenericPresentation,
    target: &SemisimpleSequence,
    cfg: &ComponentConfig,
) -> Result<Vec<PrimeTally>> {
    let mut out = Vec::new();
    for &q in &cfg.small_primes {
        let p = Prime::new(q)?;
        let mut tally = PrimeTally {
            prime: q,
            hits: 0,
            trials: 0,
        };
        let planned = cfg.trials.max(1);
        for t in 0..planned {
            // stop once the remaining trials cannot change the verdict
            let left = planned - t;
            if 4 * tally.hits >= planned || 4 * (tally.hits + left) < tally.trials + left {
                break;
            }
            let seed = derive_seed(cfg.seed, tags::GOVERN, seq_tag(&gp.layering) ^ (q << 32) ^ t as u64);
            let sp = match gp.specialize(p, seed, cfg.retries) {
                Ok(sp) => sp,
                Err(Error::RetryBudgetExhausted(_)) => continue,
                Err(e) => return Err(e),
            };
            tally.trials += 1;
            if filtration_exists(&sp.module, target, cfg.search_cap)? {
                tally.hits += 1;
            }
        }
        out.push(tally);
    }
    Ok(out)
}

/// A prime says "covered" when at least a quarter of its trials hit. Primes
/// that disagree, or that completed no trial, leave the question open.
pub fn decide(tallies: &[PrimeTally]) -> Coverage {
    let mut verdicts = Vec::new();
    for t in tallies {
        if t.trials == 0 {
            return Coverage::Undecided(format!("no specialization at p = {}", t.prime));
        }
        verdicts.push(4 * t.hits >= t.trials);
    }
    match (verdicts.iter().all(|&v| v), verdicts.iter().all(|&v| !v)) {
        (true, _) => Coverage::Covered,
        (_, true) => Coverage::NotCovered,
        _ => Coverage::Undecided(
            tallies
                .iter()
                .map(|t| format!("p = {}: {}/{}", t.prime, t.hits, t.trials))
                .collect::<Vec<_>>()
                .join(", "),
        ),
    }
}

/// Candidate from a later layer together with the verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateVerdict {
    pub candidate: SemisimpleSequence,
    /// Earlier sequence governing a filtration of its generic module.
    pub covered_by: Option<SemisimpleSequence>,
    pub coverage: Coverage,
    pub layer: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralOutcome {
    pub components: Vec<ComponentReport>,
    pub verdicts: Vec<CandidateVerdict>,
}

impl GeneralOutcome {
    pub fn undecided(&self) -> impl Iterator<Item = &CandidateVerdict> {
        self.verdicts
            .iter()
            .filter(|v| matches!(v.coverage, Coverage::Undecided(_)))
    }
}

/// `a ≤ b` in both slots with different radical layerings. Equal socle
/// layerings are allowed: a smaller sequence can govern filtrations of the
/// generic module of `b` even then.
fn below(a: &LayeringPair, b: &LayeringPair) -> Result<bool> {
    Ok(a.radical != b.radical && a.leq(b)?)
}

fn judge(
    alg: &TruncatedAlgebra,
    cand: &LayeringPair,
    earlier: &[LayeringPair],
    cfg: &ComponentConfig,
) -> Result<(Coverage, Option<SemisimpleSequence>)> {
    let gp = generic_presentation(&cand.radical, alg, None)?;
    let mut open: Option<String> = None;
    for e in earlier {
        if !below(e, cand)? {
            continue;
        }
        let verdict = match filtration_tallies(&gp, &e.radical, cfg) {
            Ok(t) => decide(&t),
            Err(Error::SearchCapExceeded(c)) => Coverage::Undecided(format!("search cap {c} exceeded")),
            Err(err) => return Err(err),
        };
        match verdict {
            Coverage::Covered => return Ok((Coverage::Covered, Some(e.radical.clone()))),
            Coverage::NotCovered => {}
            Coverage::Undecided(why) => {
                open.get_or_insert(format!("against {}: {why}", e.radical.render()));
            }
        }
    }
    Ok(match open {
        Some(why) => (Coverage::Undecided(why), None),
        None => (Coverage::NotCovered, None),
    })
}

/// Layer-by-layer rigidity search over minimal pairs. The first layer is
/// accepted outright; each later candidate is accepted when no earlier,
/// strictly smaller pair governs a filtration of its generic module.
pub fn components_general_truncated(
    alg: &TruncatedAlgebra,
    d: &DimVector,
    cfg: &ComponentConfig,
) -> Result<GeneralOutcome> {
    let mut remaining = realizable_pairs(alg, d, cfg.sequence_cap)?;
    // accepted or undecided: sequences a later candidate is checked against
    let mut earlier: Vec<LayeringPair> = Vec::new();
    let mut accepted: Vec<(SemisimpleSequence, DetectionRoute, Certification)> = Vec::new();
    let mut verdicts = Vec::new();
    let mut layer = 0;
    while !remaining.is_empty() {
        layer += 1;
        let idx = minimal_indices(&remaining);
        let current: Vec<LayeringPair> = idx.iter().map(|&i| remaining[i].clone()).collect();
        if layer == 1 {
            for c in &current {
                accepted.push((c.radical.clone(), DetectionRoute::ThetaMinimal, Certification::Exact));
            }
            earlier.extend(current.iter().cloned());
        } else {
            let results: Vec<(Coverage, Option<SemisimpleSequence>)> = current
                .par_iter()
                .map(|c| judge(alg, c, &earlier, cfg))
                .collect::<Result<_>>()?;
            for (c, (coverage, by)) in current.iter().zip(results) {
                match coverage {
                    Coverage::NotCovered => {
                        accepted.push((
                            c.radical.clone(),
                            DetectionRoute::GammaCertified,
                            Certification::FpSpecialization,
                        ));
                        earlier.push(c.clone());
                    }
                    Coverage::Undecided(_) => earlier.push(c.clone()),
                    Coverage::Covered => {}
                }
                verdicts.push(CandidateVerdict {
                    candidate: c.radical.clone(),
                    covered_by: by,
                    coverage,
                    layer,
                });
            }
        }
        let mut drop = idx;
        drop.sort_unstable();
        for i in drop.into_iter().rev() {
            remaining.swap_remove(i);
        }
        // keep the enumeration order stable for the next layer
        remaining.sort_by(|a, b| a.radical.cmp(&b.radical));
    }
    let components = accepted
        .par_iter()
        .map(|(s, route, cert)| annotate(alg, s, *route, *cert, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneralOutcome { components, verdicts })
}

/// Mode selection for [`components_auto`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Auto,
    Local,
    Acyclic,
    RadSquareZero,
    General,
}

/// Picks the cheapest applicable route unless `mode` forces one.
pub fn components_auto(
    alg: &TruncatedAlgebra,
    d: &DimVector,
    mode: Mode,
    cfg: &ComponentConfig,
) -> Result<GeneralOutcome> {
    let chosen = match mode {
        Mode::Auto if alg.is_local() => Mode::Local,
        Mode::Auto if alg.quiver().is_acyclic() => Mode::Acyclic,
        Mode::Auto if alg.loewy_bound() == 1 => Mode::RadSquareZero,
        Mode::Auto => Mode::General,
        m => m,
    };
    let components = match chosen {
        Mode::Local => {
            d.check_len(alg.vertex_count())?;
            components_local_reports(alg, d[0], cfg)?
        }
        Mode::Acyclic => components_acyclic(alg, d, cfg)?,
        Mode::RadSquareZero => components_rad_square_zero(alg, d, cfg)?,
        Mode::General | Mode::Auto => return components_general_truncated(alg, d, cfg),
    };
    Ok(GeneralOutcome {
        components,
        verdicts: Vec::new(),
    })
}

/// Every realizable `S` is either a component label or its generic module
/// has a filtration governed by one. A filtration may only be rational over
/// an extension of `F_p`, so up to `trials` specializations per small prime
/// are tried before a sequence is reported as uncovered.
pub fn uncovered_sequences(
    alg: &TruncatedAlgebra,
    d: &DimVector,
    labels: &[SemisimpleSequence],
    cfg: &ComponentConfig,
) -> Result<Vec<SemisimpleSequence>> {
    let seqs = layers::enumerate_sequences_capped(d, alg.loewy_bound(), cfg.sequence_cap)?;
    let mut out = Vec::new();
    for s in seqs.iter().filter(|s| is_realizable(s, alg)) {
        if labels.contains(s) {
            continue;
        }
        let gp = generic_presentation(s, alg, None)?;
        if !governed_by_any(&gp, labels, cfg, seq_tag(s))? {
            out.push(s.clone());
        }
    }
    Ok(out)
}

fn governed_by_any(
    gp: &GenericPresentation,
    labels: &[SemisimpleSequence],
    cfg: &ComponentConfig,
    tag: u64,
) -> Result<bool> {
    for &prime in &cfg.small_primes {
        let p = Prime::new(prime)?;
        for attempt in 0..cfg.trials.max(1) {
            let seed = derive_seed(cfg.seed, tags::GOVERN, tag ^ ((prime << 32) + attempt as u64));
            let Ok(sp) = gp.specialize(p, seed, cfg.retries) else {
                continue;
            };
            for l in labels {
                if filtration_exists(&sp.module, l, cfg.search_cap)? {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}
