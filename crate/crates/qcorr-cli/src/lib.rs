//! Command-line surface: state generation, functional evaluation and
//! verification campaigns.
//!
//! Exit status: 0 when every check passed, 1 when at least one check failed,
//! 2 for usage, parse or premise errors.

pub mod commands;
pub mod report;
pub mod stateio;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qcorr",
    version,
    about = "Entropies, correlation information and strong-subadditivity checks \
             for multipartite quantum states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Base seed; sample i uses seed + i.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Number of seeded samples in a verification campaign.
    #[arg(long, global = true, default_value_t = 1)]
    pub samples: usize,

    /// Check tolerance.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,

    /// Logarithm base for information quantities.
    #[arg(long = "log-base", global = true, value_enum, default_value_t = BaseArg::Bits)]
    pub log_base: BaseArg,

    /// Report file format.
    #[arg(long = "out", global = true, value_enum, default_value_t = OutFormat::Json)]
    pub out: OutFormat,

    /// Cap on the total Hilbert-space dimension.
    #[arg(long = "max-dim", global = true, default_value_t = 4096)]
    pub max_dim: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    Bits,
    Nats,
}

impl From<BaseArg> for qcorr::LogBase {
    fn from(value: BaseArg) -> Self {
        match value {
            BaseArg::Bits => qcorr::LogBase::Bits,
            BaseArg::Nats => qcorr::LogBase::Nats,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate a state file from a named family.
    Gen(GenArgs),
    /// Evaluate an information functional on a state file.
    Eval(EvalArgs),
    /// Run a named verification check over seeded samples or a state file.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
pub struct GenArgs {
    /// Family: bell | ghz | w3 | max-mixed | random | pure | biorthogonal |
    /// monoorthogonal | ssa-equality
    #[arg(long)]
    pub family: String,

    /// Local dimensions, comma separated (e.g. 4,4,2).
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,

    /// Rank for random states (default: full).
    #[arg(long)]
    pub rank: Option<usize>,

    /// Block dimensions per orthogonality class (first constrained subsystem).
    #[arg(long, value_delimiter = ',')]
    pub blocks: Option<Vec<usize>>,

    /// Block dimensions on the second constrained subsystem (default: same as
    /// --blocks).
    #[arg(long = "blocks-b", value_delimiter = ',')]
    pub blocks_b: Option<Vec<usize>>,

    /// Mixture weights (default: uniform over the classes).
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,

    /// Use one shared third factor instead of distinct per-class factors
    /// (ssa-equality family only).
    #[arg(long)]
    pub shared_third: bool,

    /// Output path (stdout when omitted).
    #[arg(short, long)]
    pub out_file: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct EvalArgs {
    /// State file to evaluate.
    pub state: PathBuf,

    /// Quantity: entropy | corr | mutual A B | within C | among P |
    /// excess A B D (clusters like 2,3 or {2,3}; partitions like {1}|{2,3})
    #[arg(required = true, num_args = 1..)]
    pub quantity: Vec<String>,

    /// Optional report row destination.
    #[arg(short, long)]
    pub out_file: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct VerifyArgs {
    /// Check: subadditivity | cluster-additivity | binary-chain | ssa |
    /// excess-pairing | product-discard | biorthogonal-mixing |
    /// monoorthogonal-mixing | entropy-decomposition |
    /// implied-biorthogonality | ssa-equality-family
    pub check: String,

    /// Verify a single state file instead of generating samples.
    #[arg(long)]
    pub state: Option<PathBuf>,

    /// Local dimensions for generated states.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,

    /// Rank for generated random states (default: full).
    #[arg(long)]
    pub rank: Option<usize>,

    /// Block dimensions per orthogonality class.
    #[arg(long, value_delimiter = ',')]
    pub blocks: Option<Vec<usize>>,

    /// Blocks on the second constrained subsystem (default: same as --blocks).
    #[arg(long = "blocks-b", value_delimiter = ',')]
    pub blocks_b: Option<Vec<usize>>,

    /// Mixture weights (default: uniform).
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,

    /// Number of mixture components (entropy-decomposition).
    #[arg(long)]
    pub components: Option<usize>,

    /// Product cut position M for product-discard (state is a product of
    /// subsystems 1..=M and M+1..=N).
    #[arg(long = "split-at")]
    pub split_at: Option<usize>,

    /// Generate product states and check the equality case (subadditivity).
    #[arg(long)]
    pub product: bool,

    /// Negative control: generate components that violate the check's
    /// premise; the run must fail with a premise error (exit status 2).
    #[arg(long)]
    pub violate_premise: bool,

    /// Report file destination (stdout when omitted).
    #[arg(short, long)]
    pub out_file: Option<PathBuf>,
}

pub fn run_cli(cli: &Cli) -> ExitCode {
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    if cli.samples == 0 {
        anyhow::bail!("--samples must be at least 1");
    }
    if !cli.tol.is_finite() || cli.tol <= 0.0 {
        anyhow::bail!("--tol must be positive");
    }
    match &cli.command {
        Command::Gen(args) => commands::cmd_gen(cli, args),
        Command::Eval(args) => commands::cmd_eval(cli, args),
        Command::Verify(args) => commands::cmd_verify(cli, args),
    }
}
