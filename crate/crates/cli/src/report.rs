//! Report documents. Field order is declaration order, so serialized output
//! is stable; layerings are written in the shared text format so that they
//! parse back with [`SemisimpleSequence::parse`](repvar::SemisimpleSequence::parse).

use std::fmt::Write as _;

use serde::Serialize;

use repvar::components::{
    CandidateVerdict, Certification, ComponentReport, Coverage, DetectionRoute, Indecomposability,
};
use repvar::TruncatedAlgebra;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub algebra: AlgebraSummary,
    pub seed: u64,
    pub primes: Vec<u64>,
    pub caps: Caps,
    pub result: Body,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraSummary {
    pub source: String,
    pub vertices: usize,
    pub arrows: Vec<String>,
    pub loewy_bound: usize,
}

impl AlgebraSummary {
    pub fn new(source: &str, alg: &TruncatedAlgebra) -> Self {
        AlgebraSummary {
            source: source.to_string(),
            vertices: alg.vertex_count(),
            arrows: alg
                .quiver()
                .arrows()
                .iter()
                .map(|a| format!("{}: {} -> {}", a.name, a.source + 1, a.target + 1))
                .collect(),
            loewy_bound: alg.loewy_bound(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Caps {
    pub sequence_cap: u128,
    pub search_cap: u64,
    pub skeleton_cap: u128,
    /// Names of the caps that cut a computation short.
    pub hit: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Body {
    Components {
        dimension: String,
        mode: String,
        component_count: usize,
        components: Vec<ComponentDoc>,
        candidates: Vec<VerdictDoc>,
        undecided: usize,
    },
    CanonDecomp {
        dimension: String,
        decomposition: String,
        summands: Vec<SummandDoc>,
        verified: bool,
        mu: i64,
        dense_orbit: bool,
        samples: usize,
    },
    Subdims {
        dimension: String,
        count: usize,
        vectors: Vec<String>,
    },
    SocleLayering {
        layering: String,
        socle_layering: String,
    },
    RadicalLayeringHereditary {
        dimension: String,
        layering: String,
    },
    GenericModule {
        layering: String,
        skeleton: Vec<String>,
        relations: Vec<String>,
        parameter_count: usize,
        values: Vec<u64>,
        attempts: usize,
        radical_layering: String,
        socle_layering: String,
        arrow_matrices: Vec<ArrowMatrix>,
    },
    Gamma {
        layering: String,
        count: usize,
        witnesses: Vec<String>,
        complete: bool,
    },
    Skeleta {
        layering: String,
        count: u128,
        listed: Vec<Vec<String>>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentDoc {
    pub radical_layering: String,
    pub socle_layering: String,
    pub detection_route: DetectionRoute,
    pub certification: Certification,
    pub skeleton: Vec<String>,
    pub relations: Vec<String>,
    pub parameter_count: usize,
    pub sampled_end_dim: Option<usize>,
    pub indecomposability: Indecomposability,
    pub kac_summands: Option<Vec<String>>,
    pub separated_decomposition: Option<String>,
    pub mu: Option<i64>,
    pub dense_orbit: Option<bool>,
}

impl ComponentDoc {
    pub fn new(c: &ComponentReport) -> Self {
        let q = c.presentation.algebra.quiver();
        ComponentDoc {
            radical_layering: c.radical_layering.render(),
            socle_layering: c.socle_layering.render(),
            detection_route: c.detection_route,
            certification: c.certification,
            skeleton: c.skeleton.paths.iter().map(|tp| tp.render(q)).collect(),
            relations: c.presentation.render_relations(),
            parameter_count: c.presentation.parameter_count,
            sampled_end_dim: c.sampled_end_dim,
            indecomposability: c.indecomposability,
            kac_summands: c
                .kac_summands
                .as_ref()
                .map(|v| v.iter().map(|d| d.to_string()).collect()),
            separated_decomposition: c.separated_decomposition.as_ref().map(|d| d.render()),
            mu: c.mu,
            dense_orbit: c.dense_orbit,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictDoc {
    pub candidate: String,
    pub layer: usize,
    pub verdict: &'static str,
    pub covered_by: Option<String>,
    pub reason: Option<String>,
}

impl VerdictDoc {
    pub fn new(v: &CandidateVerdict) -> Self {
        let (verdict, reason) = match &v.coverage {
            Coverage::Covered => ("covered", None),
            Coverage::NotCovered => ("not-covered", None),
            Coverage::Undecided(why) => ("undecided", Some(why.clone())),
        };
        VerdictDoc {
            candidate: v.candidate.render(),
            layer: v.layer,
            verdict,
            covered_by: v.covered_by.as_ref().map(|s| s.render()),
            reason,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SummandDoc {
    pub vector: String,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct ArrowMatrix {
    pub arrow: String,
    pub rows: Vec<Vec<u64>>,
}

fn kebab<T: Serialize>(t: &T) -> String {
    serde_json::to_value(t)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "{} {} {}", self.tool, self.version, self.command);
        let _ = writeln!(
            w,
            "algebra: {} ({} vertices, {} arrows, loewy bound {})",
            self.algebra.source,
            self.algebra.vertices,
            self.algebra.arrows.len(),
            self.algebra.loewy_bound
        );
        let primes: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        let _ = writeln!(w, "seed: {}  primes: {}", self.seed, primes.join(","));
        if !self.caps.hit.is_empty() {
            let _ = writeln!(w, "caps hit: {}", self.caps.hit.join(", "));
        }
        match &self.result {
            Body::Components {
                dimension,
                mode,
                component_count,
                components,
                candidates,
                undecided,
            } => {
                let _ = writeln!(w, "dimension: {dimension}  mode: {mode}");
                let _ = writeln!(w, "components: {component_count}");
                for (i, c) in components.iter().enumerate() {
                    let _ = writeln!(w, "[{}] S = {}", i + 1, c.radical_layering);
                    let _ = writeln!(w, "    S* = {}", c.socle_layering);
                    let _ = writeln!(
                        w,
                        "    route: {}  certification: {}",
                        kebab(&c.detection_route),
                        kebab(&c.certification)
                    );
                    let _ = writeln!(w, "    skeleton: {}", c.skeleton.join(", "));
                    for r in &c.relations {
                        let _ = writeln!(w, "    relation: {r}");
                    }
                    let _ = writeln!(
                        w,
                        "    end dim: {}  {}",
                        opt(&c.sampled_end_dim),
                        kebab(&c.indecomposability)
                    );
                    if let Some(k) = &c.kac_summands {
                        let _ = writeln!(w, "    kac summands: {}", k.join(" + "));
                    }
                    if let Some(mu) = c.mu {
                        let _ = writeln!(w, "    mu: {mu}  dense orbit: {}", opt(&c.dense_orbit));
                    }
                }
                for v in candidates.iter().filter(|v| v.verdict != "not-covered") {
                    let by = v.covered_by.as_deref().or(v.reason.as_deref()).unwrap_or("");
                    let _ = writeln!(w, "candidate {} (layer {}): {} {by}", v.candidate, v.layer, v.verdict);
                }
                if *undecided > 0 {
                    let _ = writeln!(w, "undecided candidates: {undecided}");
                }
            }
            Body::CanonDecomp {
                dimension,
                decomposition,
                verified,
                mu,
                dense_orbit,
                samples,
                ..
            } => {
                let _ = writeln!(w, "dimension: {dimension}");
                let _ = writeln!(w, "canonical decomposition: {decomposition}");
                let _ = writeln!(w, "verified: {verified}  samples: {samples}");
                let _ = writeln!(w, "mu: {mu}  dense orbit: {dense_orbit}");
            }
            Body::Subdims {
                dimension,
                count,
                vectors,
            } => {
                let _ = writeln!(w, "Sub({dimension}): {count} vectors");
                for v in vectors {
                    let _ = writeln!(w, "  {v}");
                }
            }
            Body::SocleLayering {
                layering,
                socle_layering,
            } => {
                let _ = writeln!(w, "S  = {layering}");
                let _ = writeln!(w, "S* = {socle_layering}");
            }
            Body::RadicalLayeringHereditary { dimension, layering } => {
                let _ = writeln!(w, "dimension: {dimension}");
                let _ = writeln!(w, "generic radical layering: {layering}");
            }
            Body::GenericModule {
                layering,
                skeleton,
                relations,
                parameter_count,
                values,
                attempts,
                radical_layering,
                socle_layering,
                arrow_matrices,
            } => {
                let _ = writeln!(w, "S = {layering}");
                let _ = writeln!(w, "skeleton: {}", skeleton.join(", "));
                let _ = writeln!(w, "parameters: {parameter_count}");
                for r in relations {
                    let _ = writeln!(w, "relation: {r}");
                }
                let vals: Vec<String> = values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| format!("x{}={v}", i + 1))
                    .collect();
                let _ = writeln!(w, "specialization ({attempts} attempt(s)): {}", vals.join(" "));
                let _ = writeln!(w, "radical layering: {radical_layering}");
                let _ = writeln!(w, "socle layering: {socle_layering}");
                for m in arrow_matrices {
                    let rows: Vec<String> = m
                        .rows
                        .iter()
                        .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
                        .collect();
                    let _ = writeln!(w, "{}: [{}]", m.arrow, rows.join("; "));
                }
            }
            Body::Gamma {
                layering,
                count,
                witnesses,
                complete,
            } => {
                let _ = writeln!(w, "S = {layering}");
                let bound = if *complete { "" } else { ">= " };
                let _ = writeln!(w, "gamma: {bound}{count}");
                for s in witnesses {
                    let _ = writeln!(w, "  {s}");
                }
            }
            Body::Skeleta {
                layering,
                count,
                listed,
            } => {
                let _ = writeln!(w, "S = {layering}");
                let _ = writeln!(w, "skeleta: {count}");
                for sk in listed {
                    let _ = writeln!(w, "  {{{}}}", sk.join(", "));
                }
            }
        }
        out
    }
}
