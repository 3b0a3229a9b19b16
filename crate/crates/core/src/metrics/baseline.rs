use std::fmt;
use std::str::FromStr;

use super::policy::descriptor_serde;
use crate::leadbias::SegmentedArticle;
use crate::{Error, Result};

/// Extractive lead baseline: the first `k` sentences or the first `n` characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LeadPolicy {
    Sentences(usize),
    Chars(usize),
}

impl Default for LeadPolicy {
    fn default() -> Self {
        LeadPolicy::Sentences(3)
    }
}

impl LeadPolicy {
    /// Lead-8 for Gigaword, Lead-1 for XSum, 75 characters for DUC 2003/2004,
    /// Lead-3 otherwise.
    pub fn for_dataset(name: &str) -> Self {
        match name.to_ascii_lowercase().as_str() {
            "gigaword" => LeadPolicy::Sentences(8),
            "xsum" => LeadPolicy::Sentences(1),
            "duc2003" | "duc2004" | "duc" => LeadPolicy::Chars(75),
            _ => LeadPolicy::Sentences(3),
        }
    }
}

impl fmt::Display for LeadPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeadPolicy::Sentences(k) => write!(f, "sentences:{k}"),
            LeadPolicy::Chars(n) => write!(f, "chars:{n}"),
        }
    }
}

impl FromStr for LeadPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let invalid = || Error::InvalidPolicy(s.to_string());
        let (kind, count) = s.split_once(':').ok_or_else(invalid)?;
        let count: usize = count.trim().parse().map_err(|_| invalid())?;
        if count == 0 {
            return Err(invalid());
        }
        match kind.trim().to_ascii_lowercase().as_str() {
            "sentences" | "lead" => Ok(LeadPolicy::Sentences(count)),
            "chars" => Ok(LeadPolicy::Chars(count)),
            _ => Err(invalid()),
        }
    }
}

descriptor_serde!(LeadPolicy);

/// The lead baseline summary of `article`.
///
/// Sentences are joined by single spaces; the character policy cuts that same
/// joined text, so paragraph breaks in the source do not consume the budget.
pub fn lead_baseline(article: &SegmentedArticle, policy: LeadPolicy) -> Result<String> {
    if article.sentences.is_empty() {
        return Err(Error::EmptyArticle);
    }
    let take = match policy {
        LeadPolicy::Sentences(0) | LeadPolicy::Chars(0) => {
            return Err(Error::InvalidPolicy(policy.to_string()))
        }
        LeadPolicy::Sentences(k) => k,
        LeadPolicy::Chars(_) => article.sentences.len(),
    };
    let mut out = String::new();
    for s in article.sentences.iter().take(take) {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(&s.sentence.text);
    }
    if let LeadPolicy::Chars(n) = policy {
        if let Some((cut, _)) = out.char_indices().nth(n) {
            out.truncate(cut);
        }
    }
    Ok(out)
}
