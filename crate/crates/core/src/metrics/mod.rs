//! ROUGE-1/2/L scoring, the per-dataset truncation and aggregation policies,
//! and Lead-k baselines.

mod baseline;
mod policy;
mod rouge;
mod scoring;

pub(crate) use policy::descriptor_serde;

pub use baseline::{lead_baseline, LeadPolicy};
pub use policy::{MultiRef, Report, ScoringPolicy, Truncation, Variant};
pub use rouge::{lcs_len, rouge_l, rouge_n, RougeScore};
pub use scoring::{apply_truncation, corpus_score, score_multi_reference, score_one, CorpusAccumulator, CorpusScore};
