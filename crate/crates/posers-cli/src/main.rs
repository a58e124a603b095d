//! Command-line front end: design generation and stats, library synthesis
//! and forgery simulation, read filtering, authentication, attack
//! evaluation, and the product registry.
//!
//! Exit codes are a stable scripting contract: 0 success/authentic,
//! 1 usage or I/O error, 2 forged, 3 inconclusive.

mod commands;
mod registry;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Human-readable report.
    Text,
    /// Line-oriented key=value output for scripts.
    Kv,
}

#[derive(Debug, Parser)]
#[command(
    name = "posers",
    version,
    about = "Design, simulate and authenticate steganographic DNA tag libraries"
)]
pub struct Cli {
    /// Seed for every randomized operation; equal seeds reproduce output
    /// byte for byte.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for classification-heavy commands (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Create or inspect secret designs.
    #[command(subcommand)]
    Design(DesignCmd),
    /// Print the security quantities for rule counts without generating.
    Calc(CalcArgs),
    /// Synthesize libraries (genuine pools or a random control).
    #[command(subcommand)]
    Synth(SynthCmd),
    /// Simulate forgeries.
    #[command(subcommand)]
    Forge(ForgeCmd),
    /// Filter reads down to design regions and deduplicate them.
    #[command(subcommand)]
    Ingest(IngestCmd),
    /// Authenticate a sequencing run against a design.
    Auth(AuthArgs),
    /// Run the forger's analyses against a read set.
    #[command(subcommand)]
    Attack(AttackCmd),
    /// Manage the batch/product registry.
    #[command(subcommand)]
    Registry(RegistryCmd),
}

#[derive(Debug, Subcommand)]
pub enum DesignCmd {
    /// Generate a new secret design and print its security stats.
    New(DesignNewArgs),
    /// Recompute the stats of an existing design file.
    Stats(DesignStatsArgs),
}

#[derive(Debug, Args)]
pub struct DesignNewArgs {
    /// Design-region length in nucleotides.
    #[arg(long, default_value_t = 40)]
    pub length: usize,
    /// Restricted positions allowing exactly one nucleotide.
    #[arg(long, default_value_t = 10)]
    pub k1: usize,
    /// Restricted positions allowing exactly two nucleotides.
    #[arg(long, default_value_t = 10)]
    pub k2: usize,
    /// Restricted positions allowing exactly three nucleotides.
    #[arg(long, default_value_t = 0)]
    pub k3: usize,
    /// Acceptable probability of missing a fully random forgery.
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon: f64,
    /// 5' constitutive sequence (defaults to the built-in 80-mer).
    #[arg(long)]
    pub flank5: Option<String>,
    /// 3' constitutive sequence (defaults to the built-in 80-mer).
    #[arg(long)]
    pub flank3: Option<String>,
    /// Identifier stored in the design file.
    #[arg(long)]
    pub id: Option<String>,
    /// Where to write the secret design file.
    #[arg(long)]
    pub out: PathBuf,
    /// Overwrite an existing design file.
    #[arg(long)]
    pub force: bool,
    /// Also print the secret rules (positions and allowed sets).
    #[arg(long)]
    pub reveal: bool,
}

#[derive(Debug, Args)]
pub struct DesignStatsArgs {
    /// Path to the design file.
    #[arg(long)]
    pub design: PathBuf,
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon: f64,
    /// Also print the secret rules (positions and allowed sets).
    #[arg(long)]
    pub reveal: bool,
}

#[derive(Debug, Args)]
pub struct CalcArgs {
    #[arg(long, default_value_t = 10)]
    pub k1: u32,
    #[arg(long, default_value_t = 10)]
    pub k2: u32,
    #[arg(long, default_value_t = 0)]
    pub k3: u32,
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon: f64,
}

#[derive(Debug, Subcommand)]
pub enum SynthCmd {
    /// Synthesize a combined-pool library from a design.
    Cpol(SynthCpolArgs),
    /// Synthesize a fully random control library.
    Random(SynthRandomArgs),
}

#[derive(Debug, Args)]
pub struct SynthCpolArgs {
    #[arg(long)]
    pub design: PathBuf,
    #[arg(long)]
    pub reads: usize,
    /// Per-base substitution probability.
    #[arg(long, default_value_t = 0.0)]
    pub error_rate: f64,
    /// Comma-separated per-rule mixing weights (default: equal).
    #[arg(long, value_delimiter = ',')]
    pub ratios: Option<Vec<f64>>,
    /// Write bare design regions instead of flanked oligos.
    #[arg(long)]
    pub no_flanks: bool,
    /// Write FASTA instead of FASTQ.
    #[arg(long)]
    pub fasta: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SynthRandomArgs {
    /// Region length in nucleotides.
    #[arg(long, default_value_t = 40)]
    pub length: usize,
    #[arg(long)]
    pub count: usize,
    /// 5' constitutive sequence (defaults to the built-in 80-mer).
    #[arg(long)]
    pub flank5: Option<String>,
    /// 3' constitutive sequence (defaults to the built-in 80-mer).
    #[arg(long)]
    pub flank3: Option<String>,
    #[arg(long)]
    pub no_flanks: bool,
    #[arg(long)]
    pub fasta: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum ForgeCmd {
    /// Copy a bought library by amplification: sample templates, amplify.
    Pcr(ForgePcrArgs),
    /// Synthesize a library following a predicted design.
    FromPredicted(ForgeFromPredictedArgs),
}

#[derive(Debug, Args)]
pub struct ForgePcrArgs {
    /// FASTQ/FASTA of the source product's reads.
    #[arg(long)]
    pub source: PathBuf,
    /// Distinct source reads in the forger's hands.
    #[arg(long)]
    pub source_reads: usize,
    /// Total reads after amplification.
    #[arg(long)]
    pub total: usize,
    #[arg(long)]
    pub fasta: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ForgeFromPredictedArgs {
    /// Design file holding the predicted rules.
    #[arg(long)]
    pub predicted: PathBuf,
    #[arg(long)]
    pub reads: usize,
    #[arg(long, default_value_t = 0.0)]
    pub error_rate: f64,
    #[arg(long)]
    pub no_flanks: bool,
    #[arg(long)]
    pub fasta: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum IngestCmd {
    /// Extract design regions from raw reads, tallying rejections.
    Filter(IngestFilterArgs),
    /// Deduplicate a region file and print the occurrence-rank histogram.
    Dedup(IngestDedupArgs),
}

#[derive(Debug, Args)]
pub struct IngestFilterArgs {
    #[arg(long)]
    pub design: PathBuf,
    /// Raw reads (FASTQ or FASTA).
    #[arg(long)]
    pub reads: PathBuf,
    /// Per-flank substitution tolerance.
    #[arg(long, default_value_t = 2)]
    pub max_flank_mismatch: usize,
    /// Output file, one region per line.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct IngestDedupArgs {
    /// Region file, one region per line.
    #[arg(long)]
    pub regions: PathBuf,
    /// Unique regions out, one per line (first-seen order).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a run digest (requires --run-id).
    #[arg(long, requires = "run_id")]
    pub digest_out: Option<PathBuf>,
    #[arg(long)]
    pub run_id: Option<String>,
}

#[derive(Debug, Args)]
pub struct AuthArgs {
    #[arg(long)]
    pub design: PathBuf,
    /// Raw reads (FASTQ or FASTA).
    #[arg(long)]
    pub reads: PathBuf,
    /// Unique reads required for a pass (default: the hardened sample size
    /// derived from the design and --epsilon).
    #[arg(long)]
    pub required_n: Option<u64>,
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon: f64,
    /// Non-authentic fraction tolerated by the combination test.
    #[arg(long, default_value_t = 0.0)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 2)]
    pub max_flank_mismatch: usize,
    /// Evidence factor for variety-test failures.
    #[arg(long, default_value_t = 1)]
    pub min_evidence: u64,
    /// Registry file for cross-run duplicate checks (also records this run).
    #[arg(long, env = "POSERS_REGISTRY")]
    pub registry: Option<PathBuf>,
    #[arg(long, requires = "registry")]
    pub batch_id: Option<String>,
    #[arg(long, requires = "registry")]
    pub product_id: Option<String>,
    #[arg(long, requires = "registry")]
    pub run_id: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum AttackCmd {
    /// Predict restricted positions from per-position letter frequencies.
    Predict(AttackPredictArgs),
    /// Enumerate position subsets for never-observed letter tuples.
    Enumerate(AttackEnumerateArgs),
}

#[derive(Debug, Args)]
pub struct AttackPredictArgs {
    /// Raw reads (FASTQ/FASTA); requires the observable flanks to extract
    /// regions. Use --regions for pre-extracted input instead.
    #[arg(long, conflicts_with = "regions")]
    pub reads: Option<PathBuf>,
    #[arg(long, requires = "reads")]
    pub flank5: Option<String>,
    #[arg(long, requires = "reads")]
    pub flank3: Option<String>,
    /// Region file, one region per line.
    #[arg(long)]
    pub regions: Option<PathBuf>,
    /// Assumed number of restricted positions.
    #[arg(long, default_value_t = 20)]
    pub assumed_k: usize,
    /// Assumed allowed-letter count at each restricted position.
    #[arg(long, default_value_t = 2)]
    pub assumed_i: u32,
    /// Compensate a global composition skew with per-letter baselines.
    #[arg(long)]
    pub letter_mean_baseline: bool,
    /// True design file; prints the prediction assessment.
    #[arg(long)]
    pub truth: Option<PathBuf>,
    /// Write the prediction as a design file usable by `forge from-predicted`.
    #[arg(long)]
    pub emit_design: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AttackEnumerateArgs {
    /// Region file, one region per line.
    #[arg(long)]
    pub regions: PathBuf,
    /// Largest position-subset size to test.
    #[arg(long, default_value_t = 2)]
    pub max_k: usize,
    /// Work ceiling in tuple checks; the command refuses beyond it.
    #[arg(long, default_value_t = posers::attack::ENUMERATION_CHECK_LIMIT)]
    pub max_checks: f64,
}

#[derive(Debug, Subcommand)]
pub enum RegistryCmd {
    /// Register a batch: its design reference and product ids.
    Add(RegistryAddArgs),
    /// Record a sequencing run's digest for a product.
    RecordRun(RegistryRecordRunArgs),
    /// List batches, products and recorded runs.
    List(RegistryListArgs),
}

#[derive(Debug, Args)]
pub struct RegistryAddArgs {
    #[arg(long, env = "POSERS_REGISTRY")]
    pub registry: PathBuf,
    #[arg(long)]
    pub batch_id: String,
    /// Path or identifier of the batch's design.
    #[arg(long)]
    pub design_ref: String,
    /// Product ids, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub products: Vec<String>,
}

#[derive(Debug, Args)]
pub struct RegistryRecordRunArgs {
    #[arg(long, env = "POSERS_REGISTRY")]
    pub registry: PathBuf,
    #[arg(long)]
    pub batch_id: String,
    #[arg(long)]
    pub product_id: String,
    #[arg(long)]
    pub run_id: String,
    /// Digest file produced by `ingest dedup --digest-out`.
    #[arg(long)]
    pub digest: PathBuf,
}

#[derive(Debug, Args)]
pub struct RegistryListArgs {
    #[arg(long, env = "POSERS_REGISTRY")]
    pub registry: PathBuf,
}

fn main() -> ExitCode {
    // Usage errors are exit code 1 under this tool's contract (clap's
    // default of 2 is reserved for the forged verdict).
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.exit_code() == 0 { 0 } else { 1 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };

    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: building thread pool: {e}");
            return ExitCode::from(1);
        }
    }

    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
