use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "gaborfeat",
    version,
    about = "Spectro-temporal Gabor filterbank features and phoneme similarity analysis"
)]
pub struct Cli {
    /// Optional key=value configuration file; command-line flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute 31-channel log-Mel spectrograms (MFSC baseline features).
    Melspec(ExtractArgs),
    /// Compute Gabor filterbank features for one subgroup.
    Gbfb {
        #[command(flatten)]
        common: ExtractArgs,
        /// Filter subset.
        #[arg(long, value_enum)]
        subgroup: Option<SubgroupArg>,
    },
    /// Concatenate feature subgroups and padding blocks.
    Combine {
        #[command(flatten)]
        common: ExtractArgs,
        /// Comma-separated parts (full, ltm, mtm, htm, dc, zeros:D, random:D[:SEED])
        /// or a preset name (lhtm, mhtm, dchtm, rhtm, zhtm).
        #[arg(long, value_name = "PARTS")]
        parts: Option<String>,
        /// Seed for random parts without an explicit seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Cosine similarity between phoneme-class centroids.
    Similarity(SimilarityArgs),
    /// Write every filter kernel and its parameters as CSV.
    FilterDump {
        /// Output directory.
        #[arg(long, short = 'o', value_name = "DIR")]
        out_dir: PathBuf,
        #[arg(long, value_enum)]
        subgroup: Option<SubgroupArg>,
    },
    /// Print the filterbank layout and feature dimensions.
    Info,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// Input WAV files (16 kHz, mono, 16-bit PCM).
    #[arg(required = true, value_name = "WAV")]
    pub inputs: Vec<PathBuf>,

    /// Output file, or directory when several inputs are given.
    #[arg(long, short = 'o', value_name = "PATH")]
    pub output: PathBuf,

    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,

    /// Worker threads (default: available cores).
    #[arg(long, short = 'j')]
    pub jobs: Option<usize>,

    /// Floor applied to Mel filterbank energies before the log.
    #[arg(long)]
    pub energy_floor: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SimilarityArgs {
    /// Feature or activation matrices (.htk or .csv); repeat to pool utterances.
    #[arg(long, required = true, value_name = "FILE")]
    pub features: Vec<PathBuf>,

    /// Frame label files, one per --features file, in the same order.
    #[arg(long, required = true, value_name = "FILE")]
    pub labels: Vec<PathBuf>,

    /// Phoneme list, one symbol per line.
    #[arg(long, value_name = "FILE")]
    pub phones: PathBuf,

    /// Similarities below cos(angle) are zeroed and excluded from the ordering graph.
    #[arg(long)]
    pub threshold_deg: Option<f64>,

    /// Similarity matrix CSV, rows and columns in reverse Cuthill-McKee order.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,

    /// Ordering as "<original index> <phoneme>" lines.
    #[arg(long, value_name = "FILE")]
    pub order_out: Option<PathBuf>,

    /// Skip per-dimension mean and variance normalization.
    #[arg(long)]
    pub no_normalize: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SubgroupArg {
    Full,
    Ltm,
    Mtm,
    Htm,
    Dc,
}

impl From<SubgroupArg> for gaborfeat::Subgroup {
    fn from(s: SubgroupArg) -> Self {
        match s {
            SubgroupArg::Full => Self::Full,
            SubgroupArg::Ltm => Self::Ltm,
            SubgroupArg::Mtm => Self::Mtm,
            SubgroupArg::Htm => Self::Htm,
            SubgroupArg::Dc => Self::Dc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Htk,
    Csv,
}
