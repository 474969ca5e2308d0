use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sepdfa_core::miner::Mode;

#[derive(Debug, Parser)]
#[command(name = "sepdfa", version, about = "Learn minimal separating DFAs from labelled samples")]
pub struct Cli {
    /// More log output on stderr (repeat for debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a minimum-size DFA separating the samples of an Abbadingo file.
    Mine(MineArgs),
    /// Classify all words of one length by the parity condition.
    GenParity(GenParityArgs),
    /// Draw a random DFA and samples labelled by it.
    GenRandom(GenRandomArgs),
    /// Check a DFA against a sample file.
    Verify(VerifyArgs),
    /// Print sample counts and acceptor sizes of a sample file.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Apta,
    Min3dfa,
    Ddfa,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Apta => Mode::Apta,
            ModeArg::Min3dfa => Mode::Min3dfa,
            ModeArg::Ddfa => Mode::Ddfa,
        }
    }
}

#[derive(Debug, Args)]
pub struct MineArgs {
    /// Abbadingo sample file.
    pub input: PathBuf,

    /// Acceptor handed to the encoder.
    #[arg(long, value_enum, default_value = "min3dfa")]
    pub mode: ModeArg,

    /// Add the parity shape constraints (only sound for parity corpora).
    #[arg(long)]
    pub safety: bool,

    /// Leave out the canonical-numbering constraints.
    #[arg(long)]
    pub no_symmetry_breaking: bool,

    #[command(flatten)]
    pub solver: SolverArgs,

    /// First candidate size (default 1, or 2 with --safety).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_start: Option<u64>,

    /// Last candidate size (default: a size known to suffice).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: Option<u64>,

    /// Write the DFA here instead of after the report on stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,

    /// Print the report as key=value lines.
    #[arg(long)]
    pub key_values: bool,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Solver command line; reads DIMACS and prints competition output.
    #[arg(long, env = "SEPDFA_SOLVER", default_value = "cadical")]
    pub solver: String,

    /// Per-call solver time limit in seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GenParityArgs {
    /// Number of colours; letters are 0..colours.
    #[arg(long, short = 'c')]
    pub colours: usize,

    /// Word length; must exceed the number of colours.
    #[arg(long, short = 'l')]
    pub length: usize,

    /// Output file (default stdout).
    #[arg(short, long, conflicts_with = "stats")]
    pub output: Option<PathBuf>,

    /// Print "colours length positives negatives apta min3dfa ddfa",
    /// tab-separated, instead of the samples.
    #[arg(long)]
    pub stats: bool,

    /// Refuse to enumerate more words than this.
    #[arg(long, default_value_t = sepdfa_core::generators::DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct GenRandomArgs {
    /// States of the hidden DFA.
    #[arg(long, short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
    pub states: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub alphabet: u64,

    /// Number of samples (default 50 per state).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: Option<u64>,

    /// Longest sample word (default 2 * states + 3).
    #[arg(long)]
    pub max_len: Option<usize>,

    /// Sample file (default stdout).
    #[arg(short, long)]
    pub output: Option<PathBuf>,

    /// Where to write the hidden DFA.
    #[arg(long)]
    pub dfa: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// DFA dump.
    pub dfa: PathBuf,
    /// Abbadingo sample file.
    pub samples: PathBuf,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Abbadingo sample file.
    pub input: PathBuf,
}
