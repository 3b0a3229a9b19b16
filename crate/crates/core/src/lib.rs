//! Lead-bias corpus construction and summarization evaluation.
//!
//! The crate is organised around the flow of a news article through the toolkit:
//!
//! * [`textproc`] cleans article prefixes, segments sentences, tokenizes and
//!   classifies stopwords.
//! * [`leadbias`] splits an article into its lead and the rest, measures how much
//!   of the lead is recoverable from the rest, applies the article filter and
//!   emits `(rest -> lead)` training pairs.
//! * [`metrics`] implements ROUGE-1/2/L with dataset-specific truncation and
//!   aggregation policies, and the Lead-k baselines.
//! * [`analysis`] produces the positional, distributional, novelty and
//!   length-bucket reports.
//! * [`pipeline`] streams JSONL corpora through all of the above.

pub mod analysis;
mod error;
pub mod leadbias;
pub mod metrics;
pub(crate) mod numeric;
pub mod pipeline;
pub mod textproc;

pub use error::{Error, Result};
pub use textproc::Lexicon;
