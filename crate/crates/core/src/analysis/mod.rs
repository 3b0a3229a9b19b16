//! Corpus-level reports: positional overlap profile, overlap-ratio
//! distributions, novel n-gram ratios, length-bucket score deltas and filter
//! statistics.
//!
//! Every report is built by an accumulator that is fed in input order, so a
//! caller may compute per-article quantities in parallel and still get
//! identical output for any worker count. Reports serialize to JSON and to CSV
//! with one row per bin or bucket.

mod buckets;
mod distribution;
mod novelty;
mod profile;
mod stats;

use std::io::Write;

pub use buckets::{length_bucket_delta, Bucket, BucketDeltaReport, BucketRecord};
pub use distribution::{
    overlap_distribution, pairing_ratio, DistributionAccumulator, HistogramBin, Pairing, RatioDistribution,
};
pub use novelty::{novel_ngram_ratio, NoveltyAccumulator, NoveltyBase, NoveltyEntry, NoveltyReport};
pub use profile::{position_overlap_profile, sentence_ratios, BinnedProfile, ProfileAccumulator, ProfileBin};
pub use stats::{corpus_stats, CorpusStats, CorpusStatsBuilder};

use crate::Result;

/// A report that can be written as CSV, one row per bin or bucket.
pub trait CsvReport {
    type Row: serde::Serialize;

    fn rows(&self) -> Vec<Self::Row>;

    fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        for row in self.rows() {
            writer.serialize(row).map_err(std::io::Error::other)?;
        }
        writer.flush()?;
        Ok(())
    }
}
