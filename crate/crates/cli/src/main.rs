//! `lp-lab`: LP decoding experiments from the command line.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use io::CliError;

#[derive(Debug, Parser)]
#[command(name = "lp-lab", version, about = "Exact LP decoding, dual witnesses and Calkin-threshold numerics")]
pub struct Cli {
    /// Master seed; every random choice derives from it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for trial-level parallelism (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the output here instead of stdout. A manifest is written next
    /// to it as `<out>.manifest.json`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Write the replay manifest to this path.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    /// Rerun the command recorded in a manifest.
    #[arg(long, conflicts_with = "seed")]
    pub replay: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Alist,
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a random Tanner graph.
    Gen(GenArgs),
    /// Add every redundant check of weight at most k (or all of them).
    Augment(AugmentArgs),
    /// Girth, rank, minimum cyclic sum, nondegeneracy and expansion.
    Diag(DiagArgs),
    /// Decode one LLR vector with the LP decoder, and optionally ML.
    Decode(DecodeArgs),
    /// Dual witnesses and hyperflows.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Vertices of the fundamental polytope with pseudoweight statistics.
    Vertices(VerticesArgs),
    /// Calkin thresholds and the weight walk of random rows.
    #[command(subcommand)]
    Calkin(CalkinCommand),
    /// Monte-Carlo experiments on the binary symmetric channel.
    #[command(subcommand)]
    Sim(SimCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ensemble {
    /// Every check has degree d.
    CheckRegular,
    /// Every variable has degree d.
    VariableRegular,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum, default_value = "variable-regular")]
    pub ensemble: Ensemble,
    #[arg(short)]
    pub n: usize,
    #[arg(short)]
    pub m: usize,
    #[arg(short)]
    pub d: usize,
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// Graph file, alist or JSON (chosen by the `.json` extension).
    #[arg(long, short = 'g')]
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct AugmentArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    /// Weight bound; omit for the all-redundant-checks graph.
    #[arg(short)]
    pub k: Option<usize>,
    /// Replaces the default span cap with 2^budget.
    #[arg(long)]
    pub budget: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DiagArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    /// Exhaustive cyclic-subset search up to this many checks.
    #[arg(long, default_value_t = 20)]
    pub subset_cap: usize,
    /// Nondegeneracy: sums of at least `s` rows ...
    #[arg(short, requires = "k")]
    pub s: Option<usize>,
    /// ... must have weight above `k`.
    #[arg(short, requires = "s")]
    pub k: Option<usize>,
    /// Expansion: sets of at most this many variables ...
    #[arg(long, requires = "kappa")]
    pub max_set: Option<usize>,
    /// ... need at least kappa |S| neighbouring checks.
    #[arg(long, requires = "max_set")]
    pub kappa: Option<String>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct LlrArg {
    /// Comma-separated LLRs, integers or fractions such as `-1/2`.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Received word as a bit string; LLRs are (-1)^y.
    #[arg(long)]
    pub word: Option<String>,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[command(flatten)]
    pub llr: LlrArg,
    /// Also run brute-force ML decoding.
    #[arg(long)]
    pub ml: bool,
    /// Solve in double precision instead of exact rationals.
    #[arg(long)]
    pub float: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    Dual,
    Hyperflow,
    Acyclic,
    Narrow,
}

#[derive(Debug, Subcommand)]
pub enum WitnessCommand {
    /// Search for a witness of LP success.
    Find {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        llr: LlrArg,
        #[arg(long, value_enum, default_value = "dual")]
        kind: WitnessKind,
    },
    /// Check a weighting file against its recorded LLRs.
    Verify {
        #[command(flatten)]
        graph: GraphArg,
        /// Weighting JSON as written by `witness find`.
        #[arg(long)]
        witness: PathBuf,
    },
    /// Turn an acyclic hyperflow into a primitive one by switching.
    ///
    /// Without `--witness` the graph is first closed under all redundant
    /// checks and an acyclic hyperflow is searched there.
    Primitivize {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "witness")]
        gamma: Option<String>,
        #[arg(long, conflicts_with = "witness")]
        word: Option<String>,
        /// Hyperflow weighting JSON on the given graph.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Include every switch in the output.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Debug, Args)]
pub struct VerticesArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    /// Also report the share of the top `alpha_count` coordinates.
    #[arg(long)]
    pub alpha_count: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum CalkinCommand {
    /// The double root (alpha_d, beta_d) of f_d.
    Beta {
        #[arg(short)]
        d: u32,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Residuals of the Krawtchouk eigendecomposition.
    Eigen {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
    },
    /// log2 upper bound on the probability that some sum of at least g of
    /// m random rows has weight at most k.
    Bound {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        d: usize,
        #[arg(short)]
        g: usize,
        #[arg(short)]
        k: usize,
    },
    /// Monte-Carlo frequency of (s, k)-degeneracy.
    Degeneracy {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        d: usize,
        #[arg(short)]
        s: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
}

#[derive(Debug, Args)]
pub struct TrialArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
}

#[derive(Debug, Subcommand)]
#[command(disable_help_subcommand = true)]
pub enum SimCommand {
    /// Word error rate at one crossover probability.
    Wer {
        #[command(flatten)]
        run: TrialArgs,
        #[arg(long)]
        epsilon: f64,
    },
    /// Paired WER scan over base, augmented and fully redundant graphs.
    Scan {
        #[command(flatten)]
        run: TrialArgs,
        /// Comma-separated crossover probabilities.
        #[arg(long)]
        grid: String,
        /// Comma-separated weight bounds for the augmented variants.
        #[arg(long, default_value = "")]
        ks: String,
    },
    /// Failure rate when up to b bits may be flipped before decoding.
    Help {
        #[command(flatten)]
        run: TrialArgs,
        #[arg(long)]
        epsilon: f64,
        #[arg(short)]
        b: usize,
    },
    /// Witness frequency with a negative LLR shift.
    Excess {
        #[command(flatten)]
        run: TrialArgs,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        delta: String,
    },
    /// Witness frequency with a positive LLR shift.
    Deficiency {
        #[command(flatten)]
        run: TrialArgs,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        delta: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lp-lab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

impl From<clap::Error> for CliError {
    fn from(e: clap::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}
