use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use repvar_cli::job::{parse_mode, DEFAULT_SKELETON_CAP, DEFAULT_SMALL_PRIMES, DEFAULT_TRIALS};
use repvar_cli::{run, AlgebraSource, Command, Format, JobConfig};

#[derive(Parser)]
#[command(
    name = "repvar",
    version,
    about = "Irreducible components of module varieties over truncated path algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Irreducible components of Rep_d, with generic layerings and presentations.
    Components(Common),
    /// Canonical decomposition of d over the path algebra of an acyclic quiver.
    CanonDecomp(Common),
    /// Generic subrepresentation dimension vectors Sub(d).
    Subdims(Common),
    /// Generic socle layering of a radical layering.
    SocleLayering(Common),
    /// Generic radical layering of d over an acyclic quiver.
    RadicalLayeringHereditary(Common),
    /// Generic presentation and a specialized module for a radical layering.
    GenericModule(Common),
    /// Sequences governing filtrations of a specialized generic module.
    Gamma(Common),
    /// Skeleta with a given radical layering.
    Skeleta(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Algebra description file.
    #[arg(long, visible_alias = "quiver", value_name = "FILE")]
    algebra: PathBuf,
    /// Dimension vector, comma separated in vertex order.
    #[arg(long)]
    dim: Option<String>,
    /// Radical layering, e.g. "1:1;2:1;1:1;2:1".
    #[arg(long, allow_hyphen_values = true)]
    layering: Option<String>,
    /// auto, local, acyclic, rad-square-zero or general.
    #[arg(long, default_value = "auto")]
    mode: String,
    /// Prime for sampled invariants.
    #[arg(long)]
    prime: Option<u64>,
    /// Prime for exhaustive filtration searches; repeat for several.
    #[arg(long = "small-prime")]
    small_primes: Vec<u64>,
    /// Specializations per small prime in filtration tallies.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = repvar::hereditary::DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Node cap for each filtration search.
    #[arg(long, default_value_t = repvar::repfield::DEFAULT_SEARCH_CAP)]
    cap: u64,
    /// Refuse to enumerate more semisimple sequences than this.
    #[arg(long, default_value_t = repvar::layers::DEFAULT_SEQUENCE_CAP)]
    sequence_cap: u128,
    /// Maximum number of skeleta listed.
    #[arg(long, default_value_t = DEFAULT_SKELETON_CAP)]
    skeleton_cap: u128,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

fn job(command: Command, c: Common) -> Result<JobConfig, repvar_cli::CliError> {
    let mut job = JobConfig::new(command, AlgebraSource::File(c.algebra));
    job.dim = c.dim;
    job.layering = c.layering;
    job.mode = parse_mode(&c.mode)?;
    job.prime = c.prime;
    job.small_primes = if c.small_primes.is_empty() {
        DEFAULT_SMALL_PRIMES.to_vec()
    } else {
        c.small_primes
    };
    job.trials = c.trials;
    job.samples = c.samples;
    job.seed = c.seed;
    job.search_cap = c.cap;
    job.sequence_cap = c.sequence_cap;
    job.skeleton_cap = c.skeleton_cap;
    job.format = match c.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    Ok(job)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Cmd::Components(c) => (Command::Components, c),
        Cmd::CanonDecomp(c) => (Command::CanonDecomp, c),
        Cmd::Subdims(c) => (Command::Subdims, c),
        Cmd::SocleLayering(c) => (Command::SocleLayering, c),
        Cmd::RadicalLayeringHereditary(c) => (Command::RadicalLayeringHereditary, c),
        Cmd::GenericModule(c) => (Command::GenericModule, c),
        Cmd::Gamma(c) => (Command::Gamma, c),
        Cmd::Skeleta(c) => (Command::Skeleta, c),
    };
    let outcome = job(command, common).and_then(|j| run(&j).map(|o| (o, j.format)));
    match outcome {
        Ok((o, format)) => {
            print!("{}", o.render(format));
            ExitCode::from(o.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
