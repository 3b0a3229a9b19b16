use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CsvReport;
use crate::leadbias::{containment, content_types, LeadSplit, SegmentedArticle};
use crate::numeric::{bin_count, lower_median};
use crate::textproc::Token;
use crate::{Error, Result};

/// Which two texts an overlap ratio compares. The first named text is the one
/// whose non-stopword types are looked up in the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pairing {
    SummaryVsArticle,
    SummaryVsRest,
    Lead3VsRest,
}

impl Pairing {
    pub const ALL: [Pairing; 3] = [Pairing::SummaryVsArticle, Pairing::SummaryVsRest, Pairing::Lead3VsRest];

    pub fn needs_summary(self) -> bool {
        !matches!(self, Pairing::Lead3VsRest)
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pairing::SummaryVsArticle => "SummaryVsArticle",
            Pairing::SummaryVsRest => "SummaryVsRest",
            Pairing::Lead3VsRest => "Lead3VsRest",
        })
    }
}

impl FromStr for Pairing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "summaryvsarticle" => Ok(Pairing::SummaryVsArticle),
            "summaryvsrest" => Ok(Pairing::SummaryVsRest),
            "lead3vsrest" | "leadvsrest" => Ok(Pairing::Lead3VsRest),
            _ => Err(Error::InvalidPolicy(s.to_string())),
        }
    }
}

/// Type-level non-stopword overlap for one article under `pairing`, or `None`
/// when undefined (no summary where one is needed, or no content types in the
/// first text).
pub fn pairing_ratio(
    article: &SegmentedArticle,
    summary: Option<&[Token]>,
    pairing: Pairing,
    lead_k: usize,
) -> Option<f64> {
    let split = LeadSplit::new_unchecked(article, lead_k.max(1));
    match pairing {
        Pairing::Lead3VsRest => {
            containment(&content_types(split.lead_tokens()), &content_types(split.rest_tokens()))
        }
        Pairing::SummaryVsArticle => containment(&content_types(summary?), &content_types(article.tokens())),
        Pairing::SummaryVsRest => containment(&content_types(summary?), &content_types(split.rest_tokens())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub bin_start: f64,
    pub density: f64,
    pub count: usize,
}

/// Histogram (unit area over [0, 1]) and exact median of per-article ratios.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioDistribution {
    pub label: Pairing,
    pub bin_width: f64,
    pub histogram: Vec<HistogramBin>,
    /// Lower median: the sample element of rank `(count - 1) / 2`.
    pub median: f64,
    pub count: usize,
    /// Articles whose ratio was undefined.
    pub skipped: usize,
}

// The last bin is closed so that a ratio of exactly 1 is counted.
fn bin_index(ratio: f64, bins: usize) -> usize {
    ((ratio * bins as f64).floor() as usize).min(bins - 1)
}

impl RatioDistribution {
    /// Histogram bin holding `ratio`.
    pub fn bin_index(&self, ratio: f64) -> usize {
        bin_index(ratio, self.histogram.len())
    }

    /// `Σ density · bin_width`; 1 up to rounding.
    pub fn area(&self) -> f64 {
        self.histogram.iter().map(|b| b.density * self.bin_width).sum()
    }
}

#[derive(Serialize)]
pub struct DistributionRow {
    label: Pairing,
    bin_start: f64,
    density: f64,
    count: usize,
}

impl CsvReport for RatioDistribution {
    type Row = DistributionRow;

    fn rows(&self) -> Vec<DistributionRow> {
        self.histogram
            .iter()
            .map(|b| DistributionRow {
                label: self.label,
                bin_start: b.bin_start,
                density: b.density,
                count: b.count,
            })
            .collect()
    }
}

/// Several distributions in one table, distinguished by `label`.
impl CsvReport for Vec<RatioDistribution> {
    type Row = DistributionRow;

    fn rows(&self) -> Vec<DistributionRow> {
        self.iter().flat_map(|d| d.rows()).collect()
    }
}

#[derive(Debug, Clone)]
pub struct DistributionAccumulator {
    label: Pairing,
    bin_width: f64,
    counts: Vec<usize>,
    ratios: Vec<f64>,
    skipped: usize,
}

impl DistributionAccumulator {
    pub fn new(label: Pairing, bin_width: f64) -> Result<Self> {
        let bins = bin_count(bin_width).ok_or(Error::InvalidBinWidth(bin_width))?;
        Ok(DistributionAccumulator {
            label,
            bin_width,
            counts: vec![0; bins],
            ratios: Vec::new(),
            skipped: 0,
        })
    }

    /// Records one article's ratio; `None` counts as skipped.
    pub fn push(&mut self, ratio: Option<f64>) {
        let Some(r) = ratio else {
            self.skipped += 1;
            return;
        };
        let bin = bin_index(r, self.counts.len());
        self.counts[bin] += 1;
        self.ratios.push(r);
    }

    pub fn finish(mut self) -> Result<RatioDistribution> {
        let count = self.ratios.len();
        let median = lower_median(&mut self.ratios).ok_or(Error::EmptyInput("overlap distribution"))?;
        let scale = 1.0 / (count as f64 * self.bin_width);
        let histogram = self
            .counts
            .iter()
            .enumerate()
            .map(|(i, &c)| HistogramBin {
                bin_start: i as f64 * self.bin_width,
                density: c as f64 * scale,
                count: c,
            })
            .collect();
        Ok(RatioDistribution {
            label: self.label,
            bin_width: self.bin_width,
            histogram,
            median,
            count,
            skipped: self.skipped,
        })
    }
}

pub fn overlap_distribution<'a, I>(
    corpus: I,
    pairing: Pairing,
    hist_bin: f64,
    lead_k: usize,
) -> Result<RatioDistribution>
where
    I: IntoIterator<Item = (&'a SegmentedArticle, Option<&'a [Token]>)>,
{
    let mut acc = DistributionAccumulator::new(pairing, hist_bin)?;
    for (article, summary) in corpus {
        acc.push(pairing_ratio(article, summary, pairing, lead_k));
    }
    acc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Lexicon;

    fn article(text: &str) -> SegmentedArticle {
        SegmentedArticle::segment("a", text, &Lexicon::default())
    }

    #[test]
    fn contained_leads_have_median_one() {
        let arts: Vec<SegmentedArticle> = (0..3)
            .map(|i| article(&format!("Storm{i}. Coast. Winds. Storm{i} coast winds and more.")))
            .collect();
        let d = overlap_distribution(arts.iter().map(|a| (a, None)), Pairing::Lead3VsRest, 0.05, 3).unwrap();
        assert_eq!(d.median, 1.0);
        assert_eq!(d.histogram.last().unwrap().count, 3);
        assert!((d.area() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn odd_count_median() {
        let mut acc = DistributionAccumulator::new(Pairing::Lead3VsRest, 0.1).unwrap();
        for r in [0.2, 0.4, 0.9] {
            acc.push(Some(r));
        }
        let d = acc.finish().unwrap();
        assert_eq!(d.median, 0.4);
        assert_eq!(d.count, 3);
        assert!(d.histogram[d.bin_index(d.median)].density > 0.0);
        assert_eq!(d.bin_index(0.15), 1);
        assert_eq!(d.bin_index(1.0), 9);
    }

    #[test]
    fn empty_rejected() {
        let acc = DistributionAccumulator::new(Pairing::SummaryVsRest, 0.1).unwrap();
        assert!(matches!(acc.finish(), Err(Error::EmptyInput(_))));
        let mut acc = DistributionAccumulator::new(Pairing::SummaryVsRest, 0.1).unwrap();
        acc.push(None);
        assert!(acc.finish().is_err());
    }

    #[test]
    fn summary_pairings() {
        let lex = Lexicon::default();
        let a = article("Storm hit. Coast flooded. Winds rose. Later the storm moved east.");
        let summary = lex.tokenize("The storm flooded the coast");
        let s = Some(summary.as_slice());
        // Summary types {storm, flooded, coast}; all in the article.
        assert_eq!(pairing_ratio(&a, s, Pairing::SummaryVsArticle, 3), Some(1.0));
        // Rest = "Later the storm moved east." -> only "storm".
        assert_eq!(pairing_ratio(&a, s, Pairing::SummaryVsRest, 3), Some(1.0 / 3.0));
        assert_eq!(pairing_ratio(&a, None, Pairing::SummaryVsRest, 3), None);
        // Lead types {storm, hit, coast, flooded, winds, rose}; rest has storm.
        assert_eq!(pairing_ratio(&a, None, Pairing::Lead3VsRest, 3), Some(1.0 / 6.0));
    }

    #[test]
    fn pairing_names() {
        for p in Pairing::ALL {
            assert_eq!(p.to_string().parse::<Pairing>().unwrap(), p);
        }
    }
}
