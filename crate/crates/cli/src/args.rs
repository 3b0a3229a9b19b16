use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use leadkit::analysis::{NoveltyBase, Pairing};
use leadkit::metrics::{LeadPolicy, MultiRef, Report, Truncation, Variant};

#[derive(Debug, Parser)]
#[command(
    name = "leadkit",
    version,
    about = "Lead-bias corpus building and summary evaluation"
)]
pub struct Cli {
    /// TOML pipeline configuration; flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Worker threads (defaults to the configured value).
    #[arg(long, global = true, value_name = "N")]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Strip dateline and byline prefixes from every record's text.
    Clean(CleanArgs),
    /// Filter a corpus and write training pairs, decisions and statistics.
    Filter(FilterArgs),
    /// Re-emit training pairs from a corpus and its decision log.
    Pairs(PairsArgs),
    /// Corpus statistics from a decision log.
    Stats(StatsArgs),
    /// Score candidate summaries against references.
    Rouge(RougeArgs),
    /// Share of summary n-grams absent from the lead or article.
    Novelty(ReportArgs),
    /// Summary overlap by sentence position.
    Profile(ProfileArgs),
    /// Overlap-ratio histograms and medians.
    Overlap(OverlapArgs),
    /// Score gain of one system over another by reference-length quintile.
    Buckets(BucketArgs),
    /// Lead-k or leading-characters baseline summaries.
    Baseline(BaselineArgs),
    /// Serve the baseline and scoring over HTTP.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct CleanArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[arg(long = "out", value_name = "FILE")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Training pairs output.
    #[arg(long = "out", value_name = "FILE")]
    pub pairs: Option<PathBuf>,
    /// Decision log output.
    #[arg(long, value_name = "FILE")]
    pub audit: Option<PathBuf>,
    /// Statistics output (JSON).
    #[arg(long, value_name = "FILE")]
    pub stats: Option<PathBuf>,
    /// Evaluation articles (JSONL with `text`) to exclude.
    #[arg(long, value_name = "FILE")]
    pub blocklist: Option<PathBuf>,
    #[arg(long, value_name = "K")]
    pub lead_k: Option<usize>,
    #[arg(long, value_name = "RATIO")]
    pub overlap_threshold: Option<f64>,
    #[arg(long, value_name = "N")]
    pub min_sentences: Option<usize>,
}

#[derive(Debug, Args)]
pub struct PairsArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub audit: Option<PathBuf>,
    #[arg(long = "out", value_name = "FILE")]
    pub pairs: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long, value_name = "FILE")]
    pub audit: Option<PathBuf>,
    /// Corpus the log was produced from; ids are checked against it.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write here instead of stdout.
    #[arg(long = "out", value_name = "FILE")]
    pub path: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RougeArgs {
    #[arg(long, value_name = "FILE")]
    pub candidates: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub references: PathBuf,
    /// Start from a dataset's evaluation convention (nyt, duc2004, ...).
    #[arg(long)]
    pub dataset: Option<String>,
    #[arg(long)]
    pub variant: Option<Variant>,
    #[arg(long)]
    pub report: Option<Report>,
    /// none, chars:N or match-reference.
    #[arg(long)]
    pub truncation: Option<Truncation>,
    /// max or mean.
    #[arg(long)]
    pub multi_ref: Option<MultiRef>,
    /// Also write per-document scores (JSONL).
    #[arg(long, value_name = "FILE")]
    pub per_doc: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// lead:K or article.
    #[arg(long)]
    pub base: Option<NoveltyBase>,
    #[arg(long, value_name = "N")]
    pub max_n: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[arg(long, value_name = "WIDTH")]
    pub bin: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OverlapArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[arg(long, value_name = "WIDTH")]
    pub bin: Option<f64>,
    /// Only this pairing (summary-vs-article, summary-vs-rest, lead3-vs-rest).
    #[arg(long)]
    pub pairing: Option<Pairing>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BucketArgs {
    /// JSONL of `{ref_length, score_a, score_b}`.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Summaries output (JSONL).
    #[arg(long = "out", value_name = "FILE")]
    pub output: PathBuf,
    /// sentences:K or chars:N.
    #[arg(long)]
    pub policy: Option<LeadPolicy>,
    /// Use the dataset's lead policy and scoring convention.
    #[arg(long)]
    pub dataset: Option<String>,
    /// Score against each record's `summary` with these variants.
    #[arg(long, value_delimiter = ',')]
    pub score: Vec<Variant>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: std::net::IpAddr,
}
