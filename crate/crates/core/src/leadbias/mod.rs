//! Lead/Rest splitting, the article filter, evaluation-set deduplication and
//! training-pair emission.

mod article;
mod dedup;
mod filter;
mod overlap;
mod pair;

pub use article::{split_lead, ArticleSentence, LeadSplit, SegmentedArticle};
pub use dedup::{dedup_filter, fingerprint, Blocklist, Fingerprint};
pub use filter::{exact_repeat_check, filter_article, FilterConfig, FilterDecision, Reason};
pub use overlap::{content_types, containment, overlap_ratio, word_types, EmptyLeadContent};
pub use pair::{emit_training_pair, TrainingPair};
