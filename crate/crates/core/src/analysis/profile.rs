use serde::{Deserialize, Serialize};

use super::CsvReport;
use crate::leadbias::{containment, word_types, SegmentedArticle};
use crate::numeric::{bin_count, CompensatedSum};
use crate::textproc::Token;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileBin {
    pub bin_start: f64,
    pub mean_value: f64,
    pub sample_count: usize,
}

/// Mean sentence/summary word overlap by normalized sentence position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinnedProfile {
    pub bin_width: f64,
    pub bins: Vec<ProfileBin>,
    /// Mean over all sentences, regardless of bin.
    pub global_mean: f64,
    pub sentences: usize,
    pub articles: usize,
    /// Articles skipped because they had no reference summary.
    pub skipped: usize,
}

impl BinnedProfile {
    /// Sample-weighted mean of the bin means.
    pub fn weighted_mean(&self) -> f64 {
        let mut acc = CompensatedSum::default();
        for b in &self.bins {
            acc.add(b.mean_value * b.sample_count as f64);
        }
        if self.sentences == 0 {
            0.0
        } else {
            acc.total() / self.sentences as f64
        }
    }
}

impl CsvReport for BinnedProfile {
    type Row = ProfileBin;

    fn rows(&self) -> Vec<ProfileBin> {
        self.bins.clone()
    }
}

/// Per-sentence `(bin, ratio)` contributions of one article: the fraction of
/// the sentence's word types (stopwords included) that occur in the summary.
/// Sentences without tokens contribute nothing.
pub fn sentence_ratios(article: &SegmentedArticle, summary: &[Token], bins: usize) -> Vec<(usize, f64)> {
    let summary = word_types(summary);
    let n = article.sentences.len();
    article
        .sentences
        .iter()
        .enumerate()
        .filter_map(|(idx, s)| {
            let types = word_types(&s.tokens);
            containment(&types, &summary).map(|r| (idx * bins / n, r))
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ProfileAccumulator {
    bin_width: f64,
    sums: Vec<CompensatedSum>,
    counts: Vec<usize>,
    total: CompensatedSum,
    sentences: usize,
    articles: usize,
    skipped: usize,
}

impl ProfileAccumulator {
    pub fn new(bin_width: f64) -> Result<Self> {
        let bins = bin_count(bin_width).ok_or(Error::InvalidBinWidth(bin_width))?;
        Ok(ProfileAccumulator {
            bin_width,
            sums: vec![CompensatedSum::default(); bins],
            counts: vec![0; bins],
            total: CompensatedSum::default(),
            sentences: 0,
            articles: 0,
            skipped: 0,
        })
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    /// Adds contributions computed by [`sentence_ratios`].
    pub fn add_ratios(&mut self, ratios: &[(usize, f64)]) {
        self.articles += 1;
        for &(bin, r) in ratios {
            self.sums[bin].add(r);
            self.counts[bin] += 1;
            self.total.add(r);
            self.sentences += 1;
        }
    }

    pub fn add(&mut self, article: &SegmentedArticle, summary: Option<&[Token]>) {
        match summary {
            Some(summary) => {
                let ratios = sentence_ratios(article, summary, self.bins());
                self.add_ratios(&ratios);
            }
            None => self.skip(),
        }
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn finish(self) -> BinnedProfile {
        let bins = self
            .sums
            .iter()
            .zip(&self.counts)
            .enumerate()
            .map(|(i, (sum, &count))| ProfileBin {
                bin_start: i as f64 * self.bin_width,
                mean_value: if count == 0 { 0.0 } else { sum.total() / count as f64 },
                sample_count: count,
            })
            .collect();
        BinnedProfile {
            bin_width: self.bin_width,
            bins,
            global_mean: if self.sentences == 0 {
                0.0
            } else {
                self.total.total() / self.sentences as f64
            },
            sentences: self.sentences,
            articles: self.articles,
            skipped: self.skipped,
        }
    }
}

/// Sentence position is `index / sentence_count`, so bins cover [0, 1).
pub fn position_overlap_profile<'a, I>(corpus: I, bin_width: f64) -> Result<BinnedProfile>
where
    I: IntoIterator<Item = (&'a SegmentedArticle, Option<&'a [Token]>)>,
{
    let mut acc = ProfileAccumulator::new(bin_width)?;
    for (article, summary) in corpus {
        acc.add(article, summary);
    }
    Ok(acc.finish())
}
