use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::article::{ArticleSentence, LeadSplit};
use super::overlap::overlap_ratio;
use super::SegmentedArticle;
use crate::textproc::Sentence;
use crate::{Error, Result};

/// Bounds of the article filter. Word bounds are inclusive and count every word
/// token, stopwords included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterConfig {
    pub lead_min_words: usize,
    pub lead_max_words: usize,
    pub rest_min_words: usize,
    pub rest_max_words: usize,
    pub min_sentences: usize,
    pub overlap_threshold: f64,
    pub lead_k: usize,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            lead_min_words: 10,
            lead_max_words: 150,
            rest_min_words: 150,
            rest_max_words: 1200,
            min_sentences: 6,
            overlap_threshold: 0.65,
            lead_k: 3,
        }
    }
}

impl FilterConfig {
    /// Accepts every article that has a lead with content.
    pub fn permissive() -> Self {
        FilterConfig {
            lead_min_words: 0,
            lead_max_words: usize::MAX,
            rest_min_words: 0,
            rest_max_words: usize::MAX,
            min_sentences: 1,
            overlap_threshold: 0.0,
            lead_k: 3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.overlap_threshold) {
            return Err(Error::InvalidConfig(format!(
                "overlap_threshold {} outside [0, 1]",
                self.overlap_threshold
            )));
        }
        if self.lead_min_words > self.lead_max_words {
            return Err(Error::InvalidConfig("lead_min_words exceeds lead_max_words".into()));
        }
        if self.rest_min_words > self.rest_max_words {
            return Err(Error::InvalidConfig("rest_min_words exceeds rest_max_words".into()));
        }
        if self.lead_k == 0 {
            return Err(Error::InvalidConfig("lead_k must be at least 1".into()));
        }
        Ok(())
    }
}

/// Why an article was rejected. Serialized by variant name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Reason {
    TooFewSentences,
    LeadTooShort,
    LeadTooLong,
    RestTooShort,
    RestTooLong,
    LeadRepeatedInRest,
    EmptyLeadContent,
    OverlapBelowThreshold,
    Duplicate,
}

impl Reason {
    pub const ALL: [Reason; 9] = [
        Reason::TooFewSentences,
        Reason::LeadTooShort,
        Reason::LeadTooLong,
        Reason::RestTooShort,
        Reason::RestTooLong,
        Reason::LeadRepeatedInRest,
        Reason::EmptyLeadContent,
        Reason::OverlapBelowThreshold,
        Reason::Duplicate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Reason::TooFewSentences => "TooFewSentences",
            Reason::LeadTooShort => "LeadTooShort",
            Reason::LeadTooLong => "LeadTooLong",
            Reason::RestTooShort => "RestTooShort",
            Reason::RestTooLong => "RestTooLong",
            Reason::LeadRepeatedInRest => "LeadRepeatedInRest",
            Reason::EmptyLeadContent => "EmptyLeadContent",
            Reason::OverlapBelowThreshold => "OverlapBelowThreshold",
            Reason::Duplicate => "Duplicate",
        }
    }
}

fn default_lead_k() -> usize {
    FilterConfig::default().lead_k
}

/// Verdict for one article: every violated rule plus the measured quantities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterDecision {
    pub id: String,
    pub passed: bool,
    pub reasons: Vec<Reason>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overlap_ratio: Option<f64>,
    pub lead_words: usize,
    pub rest_words: usize,
    pub sentences: usize,
    /// Lead size the decision was computed with; not part of the audit record.
    #[serde(skip, default = "default_lead_k")]
    pub lead_k: usize,
}

impl FilterDecision {
    /// Adds a rejection reason, keeping `reasons` ordered and free of repeats.
    pub fn reject(&mut self, reason: Reason) {
        if let Err(at) = self.reasons.binary_search(&reason) {
            self.reasons.insert(at, reason);
        }
        self.passed = false;
    }
}

fn normalize_ws(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Whether `lead` appears verbatim among `rest`, after trimming and collapsing
/// internal whitespace. Case-sensitive.
pub fn exact_repeat_check<S: AsRef<str>>(lead: &Sentence, rest: &[S]) -> bool {
    let target = normalize_ws(&lead.text);
    rest.iter().any(|s| normalize_ws(s.as_ref()) == target)
}

fn any_lead_repeated(split: &LeadSplit<'_>) -> bool {
    if split.rest.is_empty() {
        return false;
    }
    let rest: HashSet<String> = split.rest.iter().map(|s: &ArticleSentence| normalize_ws(&s.sentence.text)).collect();
    split
        .lead
        .iter()
        .any(|s| rest.contains(&normalize_ws(&s.sentence.text)))
}

/// Applies every rule without short-circuiting. Never fails: an article that
/// cannot be measured (e.g. no sentences) is rejected with the matching reasons.
pub fn filter_article(article: &SegmentedArticle, config: &FilterConfig) -> FilterDecision {
    let split = LeadSplit::new_unchecked(article, config.lead_k.max(1));
    let mut reasons = Vec::new();

    if article.sentence_count() < config.min_sentences {
        reasons.push(Reason::TooFewSentences);
    }
    if split.lead_words < config.lead_min_words {
        reasons.push(Reason::LeadTooShort);
    }
    if split.lead_words > config.lead_max_words {
        reasons.push(Reason::LeadTooLong);
    }
    if split.rest_words < config.rest_min_words {
        reasons.push(Reason::RestTooShort);
    }
    if split.rest_words > config.rest_max_words {
        reasons.push(Reason::RestTooLong);
    }
    if any_lead_repeated(&split) {
        reasons.push(Reason::LeadRepeatedInRest);
    }
    let ratio = overlap_ratio(split.lead_tokens(), split.rest_tokens()).ok();
    match ratio {
        None => reasons.push(Reason::EmptyLeadContent),
        Some(r) if r < config.overlap_threshold => reasons.push(Reason::OverlapBelowThreshold),
        Some(_) => {}
    }

    FilterDecision {
        id: article.id.clone(),
        passed: reasons.is_empty(),
        reasons,
        overlap_ratio: ratio,
        lead_words: split.lead_words,
        rest_words: split.rest_words,
        sentences: article.sentence_count(),
        lead_k: config.lead_k.max(1),
    }
}
