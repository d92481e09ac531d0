use std::path::PathBuf;

use thiserror::Error;

use repvar::components::{components_auto, ComponentConfig, Coverage, Mode};
use repvar::hereditary::{
    canonical_decomposition, mu_generic_params, sub_dimension_vectors, SamplingConfig, DEFAULT_PRIME, DEFAULT_ROUNDS,
    DEFAULT_SAMPLES,
};
use repvar::layers::{
    generic_radical_layering_hereditary, generic_socle_layering, is_realizable, DEFAULT_SEQUENCE_CAP,
};
use repvar::repfield::{gamma, DEFAULT_SEARCH_CAP};
use repvar::skeleta::{count_skeleta, for_each_skeleton, generic_presentation, DEFAULT_RETRIES};
use repvar::{DimVector, Prime, SemisimpleSequence, TruncatedAlgebra};

use crate::algebra_file::{parse_algebra, ParseError};
use crate::report::{AlgebraSummary, ArrowMatrix, Body, Caps, ComponentDoc, Report, SummandDoc, VerdictDoc};

pub const TOOL: &str = "repvar";
pub const DEFAULT_COMPONENT_PRIME: u64 = 10007;
pub const DEFAULT_SMALL_PRIMES: [u64; 2] = [11, 13];
pub const DEFAULT_TRIALS: usize = 32;
pub const DEFAULT_SKELETON_CAP: u128 = 1000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] repvar::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Components,
    CanonDecomp,
    Subdims,
    SocleLayering,
    RadicalLayeringHereditary,
    GenericModule,
    Gamma,
    Skeleta,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Components => "components",
            Command::CanonDecomp => "canon-decomp",
            Command::Subdims => "subdims",
            Command::SocleLayering => "socle-layering",
            Command::RadicalLayeringHereditary => "radical-layering-hereditary",
            Command::GenericModule => "generic-module",
            Command::Gamma => "gamma",
            Command::Skeleta => "skeleta",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Where the algebra comes from: a file, or inline text (used by tests).
#[derive(Debug, Clone)]
pub enum AlgebraSource {
    File(PathBuf),
    Inline { label: String, text: String },
}

#[derive(Debug, Clone)]
pub struct JobConfig {
    pub command: Command,
    pub algebra: AlgebraSource,
    pub dim: Option<String>,
    pub layering: Option<String>,
    pub mode: Mode,
    pub prime: Option<u64>,
    pub small_primes: Vec<u64>,
    pub trials: usize,
    pub samples: usize,
    pub seed: u64,
    pub search_cap: u64,
    pub sequence_cap: u128,
    pub skeleton_cap: u128,
    pub format: Format,
}

impl JobConfig {
    pub fn new(command: Command, algebra: AlgebraSource) -> Self {
        JobConfig {
            command,
            algebra,
            dim: None,
            layering: None,
            mode: Mode::Auto,
            prime: None,
            small_primes: DEFAULT_SMALL_PRIMES.to_vec(),
            trials: DEFAULT_TRIALS,
            samples: DEFAULT_SAMPLES,
            seed: 0,
            search_cap: DEFAULT_SEARCH_CAP,
            sequence_cap: DEFAULT_SEQUENCE_CAP,
            skeleton_cap: DEFAULT_SKELETON_CAP,
            format: Format::Text,
        }
    }
}

/// A finished job: the report plus whether undecided items remain.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub undecided: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.undecided {
            2
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.report.to_text(),
            Format::Json => self.report.to_json() + "\n",
        }
    }
}

pub fn parse_mode(text: &str) -> Result<Mode, CliError> {
    Ok(match text {
        "auto" => Mode::Auto,
        "local" => Mode::Local,
        "acyclic" => Mode::Acyclic,
        "rad-square-zero" => Mode::RadSquareZero,
        "general" => Mode::General,
        other => {
            return Err(CliError::Usage(format!(
                "unknown mode `{other}` (auto, local, acyclic, rad-square-zero, general)"
            )))
        }
    })
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Auto => "auto",
        Mode::Local => "local",
        Mode::Acyclic => "acyclic",
        Mode::RadSquareZero => "rad-square-zero",
        Mode::General => "general",
    }
}

pub fn parse_dim(text: &str, n: usize) -> Result<DimVector, CliError> {
    let entries = text
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("bad dimension entry `{}` in `{text}`", x.trim())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if entries.len() != n {
        return Err(CliError::Usage(format!(
            "dimension vector `{text}` has {} entries, the quiver has {n} vertices",
            entries.len()
        )));
    }
    Ok(DimVector::new(entries))
}

fn load(src: &AlgebraSource) -> Result<(String, TruncatedAlgebra), CliError> {
    let (label, text) = match src {
        AlgebraSource::File(p) => {
            let label = p.display().to_string();
            let text = std::fs::read_to_string(p).map_err(|source| CliError::Io {
                path: label.clone(),
                source,
            })?;
            (label, text)
        }
        AlgebraSource::Inline { label, text } => (label.clone(), text.clone()),
    };
    let alg = parse_algebra(&text).map_err(|source| CliError::Parse {
        path: label.clone(),
        source,
    })?;
    Ok((label, alg))
}

fn need<'a>(x: &'a Option<String>, flag: &str, cmd: Command) -> Result<&'a str, CliError> {
    x.as_deref()
        .ok_or_else(|| CliError::Usage(format!("`{}` needs --{flag}", cmd.name())))
}

fn prime(job: &JobConfig, default: u64) -> Result<Prime, CliError> {
    Ok(Prime::new(job.prime.unwrap_or(default))?)
}

pub fn run(job: &JobConfig) -> Result<Outcome, CliError> {
    let (label, alg) = load(&job.algebra)?;
    let n = alg.vertex_count();
    let l = alg.loewy_bound();
    let mut hit = Vec::new();
    let mut undecided = false;
    let mut primes = Vec::new();

    let result = match job.command {
        Command::Components => {
            let d = parse_dim(need(&job.dim, "dim", job.command)?, n)?;
            let cfg = ComponentConfig {
                prime: job.prime.unwrap_or(DEFAULT_COMPONENT_PRIME),
                small_primes: job.small_primes.clone(),
                trials: job.trials,
                seed: job.seed,
                search_cap: job.search_cap,
                sequence_cap: job.sequence_cap,
                retries: DEFAULT_RETRIES,
                samples: job.samples,
                annotate: true,
            };
            Prime::new(cfg.prime)?;
            for &p in &cfg.small_primes {
                Prime::new(p)?;
            }
            primes.push(cfg.prime);
            primes.extend(&cfg.small_primes);
            let out = components_auto(&alg, &d, job.mode, &cfg)?;
            let open = out.undecided().count();
            undecided = open > 0;
            if out
                .verdicts
                .iter()
                .any(|v| matches!(&v.coverage, Coverage::Undecided(why) if why.contains("cap")))
            {
                hit.push("search_cap".to_string());
            }
            Body::Components {
                dimension: d.to_string(),
                mode: mode_name(job.mode).to_string(),
                component_count: out.components.len(),
                components: out.components.iter().map(ComponentDoc::new).collect(),
                candidates: out.verdicts.iter().map(VerdictDoc::new).collect(),
                undecided: open,
            }
        }
        Command::CanonDecomp => {
            let d = parse_dim(need(&job.dim, "dim", job.command)?, n)?;
            let cfg = sampling(job)?;
            primes.push(cfg.prime);
            let dec = canonical_decomposition(alg.quiver(), &d, &cfg, DEFAULT_ROUNDS)?;
            let gp = mu_generic_params(alg.quiver(), &dec)?;
            undecided = !dec.verified;
            Body::CanonDecomp {
                dimension: d.to_string(),
                decomposition: dec.render(),
                summands: dec
                    .summands
                    .iter()
                    .map(|(v, k)| SummandDoc {
                        vector: v.to_string(),
                        multiplicity: *k,
                    })
                    .collect(),
                verified: dec.verified,
                mu: gp.mu,
                dense_orbit: gp.dense_orbit,
                samples: cfg.samples,
            }
        }
        Command::Subdims => {
            let d = parse_dim(need(&job.dim, "dim", job.command)?, n)?;
            let cfg = sampling(job)?;
            primes.push(cfg.prime);
            let subs = sub_dimension_vectors(alg.quiver(), &d, &cfg)?;
            Body::Subdims {
                dimension: d.to_string(),
                count: subs.len(),
                vectors: subs.iter().map(DimVector::to_string).collect(),
            }
        }
        Command::SocleLayering => {
            let s = SemisimpleSequence::parse(need(&job.layering, "layering", job.command)?, n, l)?;
            Body::SocleLayering {
                layering: s.render(),
                socle_layering: generic_socle_layering(&s, &alg)?.render(),
            }
        }
        Command::RadicalLayeringHereditary => {
            let d = parse_dim(need(&job.dim, "dim", job.command)?, n)?;
            Body::RadicalLayeringHereditary {
                dimension: d.to_string(),
                layering: generic_radical_layering_hereditary(alg.quiver(), &d)?.render(),
            }
        }
        Command::GenericModule => {
            let s = SemisimpleSequence::parse(need(&job.layering, "layering", job.command)?, n, l)?;
            let p = prime(job, DEFAULT_COMPONENT_PRIME)?;
            primes.push(p.value());
            let gp = generic_presentation(&s, &alg, None)?;
            let sp = gp.specialize(p, job.seed, DEFAULT_RETRIES)?;
            let q = alg.quiver();
            Body::GenericModule {
                layering: s.render(),
                skeleton: gp.skeleton.paths.iter().map(|tp| tp.render(q)).collect(),
                relations: gp.render_relations(),
                parameter_count: gp.parameter_count,
                values: sp.values.clone(),
                attempts: sp.attempts,
                radical_layering: sp.module.radical_layering().render(),
                socle_layering: sp.module.socle_layering().render(),
                arrow_matrices: q
                    .arrows()
                    .iter()
                    .enumerate()
                    .map(|(i, a)| {
                        let m = sp.module.map(i);
                        ArrowMatrix {
                            arrow: a.name.clone(),
                            rows: (0..m.rows()).map(|r| m.row(r).to_vec()).collect(),
                        }
                    })
                    .collect(),
            }
        }
        Command::Gamma => {
            let s = SemisimpleSequence::parse(need(&job.layering, "layering", job.command)?, n, l)?;
            let p = prime(job, DEFAULT_SMALL_PRIMES[0])?;
            primes.push(p.value());
            let gp = generic_presentation(&s, &alg, None)?;
            let sp = gp.specialize(p, job.seed, DEFAULT_RETRIES)?;
            match gamma(&sp.module, job.search_cap) {
                Ok(g) => Body::Gamma {
                    layering: s.render(),
                    count: g.count,
                    witnesses: g.witnesses.iter().map(SemisimpleSequence::render).collect(),
                    complete: true,
                },
                Err(repvar::Error::SearchCapExceeded(_)) => {
                    hit.push("search_cap".to_string());
                    undecided = true;
                    Body::Gamma {
                        layering: s.render(),
                        count: 1,
                        witnesses: vec![s.render()],
                        complete: false,
                    }
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Skeleta => {
            let s = SemisimpleSequence::parse(need(&job.layering, "layering", job.command)?, n, l)?;
            if !is_realizable(&s, &alg) {
                return Err(repvar::Error::NotRealizable.into());
            }
            let count = count_skeleta(&s, &alg);
            let mut listed = Vec::new();
            let q = alg.quiver();
            for_each_skeleton(&s, &alg, &mut |sk| {
                listed.push(sk.paths.iter().map(|tp| tp.render(q)).collect());
                (listed.len() as u128) < job.skeleton_cap
            });
            if (listed.len() as u128) < count {
                hit.push("skeleton_cap".to_string());
            }
            Body::Skeleta {
                layering: s.render(),
                count,
                listed,
            }
        }
    };

    Ok(Outcome {
        report: Report {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command: job.command.name(),
            algebra: AlgebraSummary::new(&label, &alg),
            seed: job.seed,
            primes,
            caps: Caps {
                sequence_cap: job.sequence_cap,
                search_cap: job.search_cap,
                skeleton_cap: job.skeleton_cap,
                hit,
            },
            result,
        },
        undecided,
    })
}

fn sampling(job: &JobConfig) -> Result<SamplingConfig, CliError> {
    Ok(SamplingConfig {
        samples: job.samples,
        prime: prime(job, DEFAULT_PRIME)?.value(),
        seed: job.seed,
    })
}
