use serde::{Deserialize, Serialize};

use super::article::LeadSplit;
use super::{FilterDecision, SegmentedArticle};
use crate::{Error, Result};

/// A `(rest -> lead)` example for sequence-to-sequence pre-training.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingPair {
    pub id: String,
    pub source: String,
    pub target: String,
    pub overlap_ratio: f64,
}

/// Builds the training pair for an article that passed the filter.
pub fn emit_training_pair(article: &SegmentedArticle, decision: &FilterDecision) -> Result<TrainingPair> {
    if decision.id != article.id {
        return Err(Error::IdMismatch {
            decision: decision.id.clone(),
            article: article.id.clone(),
        });
    }
    let not_passed = || Error::NotPassed { id: article.id.clone() };
    if !decision.passed {
        return Err(not_passed());
    }
    let overlap_ratio = decision.overlap_ratio.ok_or_else(not_passed)?;
    let split = LeadSplit::new_unchecked(article, decision.lead_k.max(1));
    let (source, target) = (split.rest_text(), split.lead_text());
    if source.is_empty() || target.is_empty() {
        return Err(not_passed());
    }
    Ok(TrainingPair {
        id: article.id.clone(),
        source,
        target,
        overlap_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leadbias::{filter_article, FilterConfig};
    use crate::Lexicon;

    #[test]
    fn lead_only_article_never_emits() {
        let a = SegmentedArticle::segment("solo", "The storm hit the coast hard today.", &Lexicon::default());
        let d = filter_article(&a, &FilterConfig::default());
        assert!(!d.passed);
        assert!(matches!(emit_training_pair(&a, &d), Err(Error::NotPassed { .. })));

        // Even a permissive filter cannot produce a pair with an empty source.
        let d = filter_article(&a, &FilterConfig { overlap_threshold: 0.0, ..FilterConfig::permissive() });
        assert!(d.passed);
        assert!(emit_training_pair(&a, &d).is_err());
    }

    #[test]
    fn mismatched_ids() {
        let lex = Lexicon::default();
        let a = SegmentedArticle::segment("a", "Storm. Coast. Winds. Storm coast winds.", &lex);
        let b = SegmentedArticle::segment("b", "Storm. Coast. Winds. Storm coast winds.", &lex);
        let d = filter_article(&a, &FilterConfig::permissive());
        assert!(d.passed);
        assert!(matches!(emit_training_pair(&b, &d), Err(Error::IdMismatch { .. })));
        let pair = emit_training_pair(&a, &d).unwrap();
        assert_eq!(pair.target, "Storm. Coast. Winds.");
        assert_eq!(pair.source, "Storm coast winds.");
        assert_eq!(pair.overlap_ratio, 1.0);
    }
}
