//! Streaming corpus stages: clean, filter, re-emit pairs, and the report
//! drivers behind the command line.
//!
//! Input is JSONL, one record per line. Lines are read in bounded chunks,
//! processed on a fixed-size worker pool and written back in input order, so
//! output bytes never depend on the worker count.

mod analyze;
mod config;
mod record;
mod run;
mod stream;

pub use analyze::{
    analyze_corpus, read_bucket_records, run_baseline, score_files, BaselineOutcome, BaselineSummary, CorpusReports,
    DocumentScore, ScoreReport, SummaryRecord,
};
pub use config::{default_decode_params, DecodeParams, IoPaths, PipelineConfig, ReportOptions, ResourcePaths, ENV_OVERRIDES};
pub use record::{CorpusRecord, Summaries};
pub use run::{load_blocklist, process_article, run_clean, run_filter, run_pairs, FilterOutcome, Manifest};
pub use stream::InputSummary;
