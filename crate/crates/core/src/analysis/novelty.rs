use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CsvReport;
use crate::leadbias::{LeadSplit, SegmentedArticle};
use crate::numeric::order_free_mean;
use crate::textproc::ngram_slices;
use crate::{Error, Result};

/// Fraction of the summary's distinct n-grams that do not occur in `base`.
/// `Ok(None)` when the summary is shorter than `n`.
pub fn novel_ngram_ratio<T: Hash + Eq>(summary: &[T], base: &[T], n: usize) -> Result<Option<f64>> {
    let grams = ngram_slices(summary, n)?;
    if grams.is_empty() {
        return Ok(None);
    }
    let base: HashSet<&[T]> = ngram_slices(base, n)?;
    let novel = grams.iter().filter(|g| !base.contains(*g)).count();
    Ok(Some(novel as f64 / grams.len() as f64))
}

/// The text a summary is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoveltyBase {
    /// The first `k` sentences of the article.
    Lead(usize),
    Article,
}

impl Default for NoveltyBase {
    fn default() -> Self {
        NoveltyBase::Lead(3)
    }
}

impl NoveltyBase {
    pub fn tokens(self, article: &SegmentedArticle) -> Vec<String> {
        let tokens: Vec<&crate::textproc::Token> = match self {
            NoveltyBase::Lead(k) => LeadSplit::new_unchecked(article, k.max(1)).lead_tokens().collect(),
            NoveltyBase::Article => article.tokens().collect(),
        };
        tokens.into_iter().map(|t| t.surface.clone()).collect()
    }
}

impl fmt::Display for NoveltyBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoveltyBase::Lead(k) => write!(f, "lead:{k}"),
            NoveltyBase::Article => f.write_str("article"),
        }
    }
}

impl FromStr for NoveltyBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("article") {
            return Ok(NoveltyBase::Article);
        }
        match s.split_once(':') {
            Some((kind, k)) if kind.eq_ignore_ascii_case("lead") => match k.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(NoveltyBase::Lead(k)),
                _ => Err(Error::InvalidPolicy(s.to_string())),
            },
            _ => Err(Error::InvalidPolicy(s.to_string())),
        }
    }
}

crate::metrics::descriptor_serde!(NoveltyBase);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoveltyEntry {
    pub n: usize,
    /// Mean of per-summary ratios; absent when no summary had `n` tokens.
    pub ratio: Option<f64>,
    pub summaries: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoveltyReport {
    pub base: NoveltyBase,
    pub per_n: Vec<NoveltyEntry>,
}

impl NoveltyReport {
    pub fn ratio(&self, n: usize) -> Option<f64> {
        self.per_n.iter().find(|e| e.n == n).and_then(|e| e.ratio)
    }
}

impl CsvReport for NoveltyReport {
    type Row = NoveltyEntry;

    fn rows(&self) -> Vec<NoveltyEntry> {
        self.per_n.clone()
    }
}

/// Averages per-summary novelty ratios for n = 1..=max_n.
#[derive(Debug, Clone)]
pub struct NoveltyAccumulator {
    base: NoveltyBase,
    ratios: Vec<Vec<f64>>,
}

impl NoveltyAccumulator {
    pub fn new(base: NoveltyBase, max_n: usize) -> Result<Self> {
        if max_n == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(NoveltyAccumulator {
            base,
            ratios: vec![Vec::new(); max_n],
        })
    }

    pub fn max_n(&self) -> usize {
        self.ratios.len()
    }

    /// Per-n ratios of one summary, index 0 holding n = 1.
    pub fn measure(&self, summary: &[String], article: &SegmentedArticle) -> Vec<Option<f64>> {
        let base = self.base.tokens(article);
        (1..=self.max_n())
            .map(|n| novel_ngram_ratio(summary, &base, n).expect("n >= 1"))
            .collect()
    }

    pub fn push(&mut self, per_n: &[Option<f64>]) {
        for (slot, r) in self.ratios.iter_mut().zip(per_n) {
            if let Some(r) = r {
                slot.push(*r);
            }
        }
    }

    pub fn finish(mut self) -> NoveltyReport {
        let per_n = self
            .ratios
            .iter_mut()
            .enumerate()
            .map(|(i, v)| NoveltyEntry {
                n: i + 1,
                summaries: v.len(),
                ratio: order_free_mean(v),
            })
            .collect();
        NoveltyReport {
            base: self.base,
            per_n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Lexicon;
    use proptest::prelude::*;

    #[test]
    fn copy_is_zero() {
        let s = ["a", "b", "c"];
        for n in 1..=3 {
            assert_eq!(novel_ngram_ratio(&s, &s, n).unwrap(), Some(0.0));
        }
    }

    #[test]
    fn disjoint_is_one() {
        assert_eq!(novel_ngram_ratio(&["a", "b"], &["c", "d"], 1).unwrap(), Some(1.0));
        assert_eq!(novel_ngram_ratio(&["a", "b"], &["c", "d"], 2).unwrap(), Some(1.0));
    }

    #[test]
    fn half_novel_bigrams() {
        assert_eq!(novel_ngram_ratio(&["a", "b", "c"], &["b", "c", "d"], 2).unwrap(), Some(0.5));
    }

    #[test]
    fn too_short_is_absent() {
        assert_eq!(novel_ngram_ratio(&["a"], &["a"], 2).unwrap(), None);
        assert!(novel_ngram_ratio(&["a"], &["a"], 0).is_err());
    }

    #[test]
    fn accumulator_report() {
        let lex = Lexicon::default();
        let article = SegmentedArticle::segment("a", "Storm hit coast. Rain fell. Winds rose. Later calm.", &lex);
        let mut acc = NoveltyAccumulator::new(NoveltyBase::Lead(1), 4).unwrap();
        let copy = lex.words("storm hit coast");
        let fresh = lex.words("calm returned");
        let m1 = acc.measure(&copy, &article);
        let m2 = acc.measure(&fresh, &article);
        acc.push(&m1);
        acc.push(&m2);
        let report = acc.finish();
        assert_eq!(report.ratio(1), Some(0.5));
        assert_eq!(report.ratio(2), Some(0.5));
        // Only the copied summary has a trigram.
        assert_eq!(report.ratio(3), Some(0.0));
        assert_eq!(report.ratio(4), None);
        assert_eq!(report.per_n[3].summaries, 0);
    }

    #[test]
    fn base_descriptors() {
        assert_eq!("lead:1".parse::<NoveltyBase>().unwrap(), NoveltyBase::Lead(1));
        assert_eq!("article".parse::<NoveltyBase>().unwrap(), NoveltyBase::Article);
        assert!("lead:0".parse::<NoveltyBase>().is_err());
    }

    proptest! {
        #[test]
        fn self_novelty_is_zero(s in prop::collection::vec(0u8..5, 0..15), n in 1usize..5) {
            if let Some(r) = novel_ngram_ratio(&s, &s, n).unwrap() {
                prop_assert_eq!(r, 0.0);
            }
        }
    }
}
