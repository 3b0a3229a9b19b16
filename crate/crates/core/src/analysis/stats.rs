use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::leadbias::{FilterDecision, Reason};
use crate::numeric::lower_median;
use crate::{Error, Result};

/// Aggregate filter statistics over a corpus.
///
/// Word means and totals describe the retained (passing) articles, which is
/// the data actually emitted for training.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub article_count: usize,
    pub passed: usize,
    pub rejected: usize,
    pub retention_ratio: f64,
    pub mean_lead_words: Option<f64>,
    pub mean_rest_words: Option<f64>,
    pub total_words: u64,
    /// Number of rejected articles violating each rule; an article can count
    /// toward several rules.
    pub rejections: BTreeMap<String, usize>,
    pub median_overlap: Option<f64>,
}

/// Streaming builder for [`CorpusStats`]. Keeps counts and the retained
/// overlap ratios, never the decisions themselves.
#[derive(Debug, Clone, Default)]
pub struct CorpusStatsBuilder {
    total: usize,
    passed: usize,
    lead_words: u64,
    rest_words: u64,
    rejections: BTreeMap<Reason, usize>,
    overlaps: Vec<f64>,
}

impl CorpusStatsBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, decision: &FilterDecision) {
        self.total += 1;
        if decision.passed {
            self.passed += 1;
            self.lead_words += decision.lead_words as u64;
            self.rest_words += decision.rest_words as u64;
            if let Some(r) = decision.overlap_ratio {
                self.overlaps.push(r);
            }
        } else {
            for reason in &decision.reasons {
                *self.rejections.entry(*reason).or_insert(0) += 1;
            }
        }
    }

    pub fn merge(&mut self, other: CorpusStatsBuilder) {
        self.total += other.total;
        self.passed += other.passed;
        self.lead_words += other.lead_words;
        self.rest_words += other.rest_words;
        for (reason, n) in other.rejections {
            *self.rejections.entry(reason).or_insert(0) += n;
        }
        self.overlaps.extend(other.overlaps);
    }

    pub fn finish(mut self) -> CorpusStats {
        let mean = |sum: u64| (self.passed > 0).then(|| sum as f64 / self.passed as f64);
        let rejections = Reason::ALL
            .iter()
            .map(|r| (r.as_str().to_string(), self.rejections.get(r).copied().unwrap_or(0)))
            .collect();
        CorpusStats {
            article_count: self.total,
            passed: self.passed,
            rejected: self.total - self.passed,
            retention_ratio: if self.total == 0 {
                0.0
            } else {
                self.passed as f64 / self.total as f64
            },
            mean_lead_words: mean(self.lead_words),
            mean_rest_words: mean(self.rest_words),
            total_words: self.lead_words + self.rest_words,
            rejections,
            median_overlap: lower_median(&mut self.overlaps),
        }
    }
}

/// Statistics over `decisions`, checking that they cover exactly `article_ids`.
pub fn corpus_stats<'a, D, A>(decisions: D, article_ids: A) -> Result<CorpusStats>
where
    D: IntoIterator<Item = &'a FilterDecision>,
    A: IntoIterator<Item = &'a str>,
{
    let mut expected: HashSet<&str> = article_ids.into_iter().collect();
    let mut unexpected = Vec::new();
    let mut builder = CorpusStatsBuilder::new();
    for d in decisions {
        if !expected.remove(d.id.as_str()) {
            unexpected.push(d.id.clone());
        }
        builder.push(d);
    }
    if !expected.is_empty() || !unexpected.is_empty() {
        let mut missing: Vec<String> = expected.into_iter().map(str::to_string).collect();
        missing.sort();
        return Err(Error::IdSetMismatch { missing, unexpected });
    }
    Ok(builder.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decision(id: &str, reasons: &[Reason], ratio: Option<f64>, lead: usize, rest: usize) -> FilterDecision {
        FilterDecision {
            id: id.into(),
            passed: reasons.is_empty(),
            reasons: reasons.to_vec(),
            overlap_ratio: ratio,
            lead_words: lead,
            rest_words: rest,
            sentences: 6,
            lead_k: 3,
        }
    }

    #[test]
    fn four_of_ten_pass() {
        let ds: Vec<FilterDecision> = (0..10)
            .map(|i| {
                if i < 4 {
                    decision(&i.to_string(), &[], Some(0.7 + i as f64 / 100.0), 50, 500)
                } else {
                    decision(&i.to_string(), &[Reason::OverlapBelowThreshold], Some(0.1), 50, 500)
                }
            })
            .collect();
        let ids: Vec<String> = (0..10).map(|i| i.to_string()).collect();
        let s = corpus_stats(&ds, ids.iter().map(String::as_str)).unwrap();
        assert_eq!(s.retention_ratio, 0.4);
        assert_eq!(s.passed, 4);
        assert_eq!(s.rejections["OverlapBelowThreshold"], 6);
        assert_eq!(s.rejections["TooFewSentences"], 0);
        assert_eq!(s.mean_lead_words, Some(50.0));
        assert_eq!(s.total_words, 4 * 550);
        assert_eq!(s.median_overlap, Some(0.71));
    }

    #[test]
    fn all_rejected() {
        let ds = vec![decision("a", &[Reason::LeadTooShort], None, 3, 0)];
        let s = corpus_stats(&ds, ["a"]).unwrap();
        assert_eq!(s.retention_ratio, 0.0);
        assert_eq!(s.median_overlap, None);
        assert_eq!(s.mean_lead_words, None);
    }

    #[test]
    fn empty_corpus() {
        let s = CorpusStatsBuilder::new().finish();
        assert_eq!(s.article_count, 0);
        assert_eq!(s.retention_ratio, 0.0);
    }

    #[test]
    fn id_mismatch_reported() {
        let ds = vec![decision("a", &[], Some(1.0), 20, 200), decision("z", &[], Some(1.0), 20, 200)];
        match corpus_stats(&ds, ["a", "b"]) {
            Err(Error::IdSetMismatch { missing, unexpected }) => {
                assert_eq!(missing, ["b"]);
                assert_eq!(unexpected, ["z"]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn merge_matches_sequential() {
        let ds: Vec<FilterDecision> = (0..9)
            .map(|i| {
                let reasons: &[Reason] = if i % 3 == 0 { &[Reason::RestTooShort] } else { &[] };
                decision(&i.to_string(), reasons, Some(i as f64 / 10.0), i, 10 * i)
            })
            .collect();
        let mut whole = CorpusStatsBuilder::new();
        ds.iter().for_each(|d| whole.push(d));
        let (mut a, mut b) = (CorpusStatsBuilder::new(), CorpusStatsBuilder::new());
        ds[..4].iter().for_each(|d| a.push(d));
        ds[4..].iter().for_each(|d| b.push(d));
        a.merge(b);
        assert_eq!(a.finish(), whole.finish());
    }
}
