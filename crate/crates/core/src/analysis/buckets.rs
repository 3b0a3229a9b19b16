use serde::{Deserialize, Serialize};

use super::CsvReport;
use crate::numeric::order_free_mean;
use crate::{Error, Result};

/// Reference length and the two systems' scores for one document.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BucketRecord {
    pub ref_length: usize,
    pub score_a: f64,
    pub score_b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bucket {
    /// Percentile range label, e.g. `"0-20%"`.
    pub label: String,
    pub count: usize,
    pub min_ref_length: usize,
    pub max_ref_length: usize,
    /// Mean of `score_b - score_a`.
    pub mean_delta: f64,
}

/// Mean score gain of system B over system A per reference-length quintile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BucketDeltaReport {
    pub buckets: Vec<Bucket>,
    pub count: usize,
}

impl CsvReport for BucketDeltaReport {
    type Row = Bucket;

    fn rows(&self) -> Vec<Bucket> {
        self.buckets.clone()
    }
}

const QUINTILES: usize = 5;

/// Sorts by reference length and splits into five contiguous quintiles whose
/// sizes differ by at most one (earlier buckets take the remainder).
///
/// Ties in length are ordered by the scores themselves, so the report does not
/// depend on input order.
pub fn length_bucket_delta<I>(records: I) -> Result<BucketDeltaReport>
where
    I: IntoIterator<Item = BucketRecord>,
{
    let mut records: Vec<BucketRecord> = records.into_iter().collect();
    if records.len() < QUINTILES {
        return Err(Error::TooFewRecords {
            needed: QUINTILES,
            got: records.len(),
        });
    }
    records.sort_by(|a, b| {
        a.ref_length
            .cmp(&b.ref_length)
            .then(a.score_a.total_cmp(&b.score_a))
            .then(a.score_b.total_cmp(&b.score_b))
    });

    let total = records.len();
    let (base, extra) = (total / QUINTILES, total % QUINTILES);
    let mut buckets = Vec::with_capacity(QUINTILES);
    let mut start = 0;
    for q in 0..QUINTILES {
        let size = base + usize::from(q < extra);
        let slice = &records[start..start + size];
        let mut deltas: Vec<f64> = slice.iter().map(|r| r.score_b - r.score_a).collect();
        buckets.push(Bucket {
            label: format!("{}-{}%", q * 20, (q + 1) * 20),
            count: size,
            min_ref_length: slice[0].ref_length,
            max_ref_length: slice[size - 1].ref_length,
            mean_delta: order_free_mean(&mut deltas).expect("bucket is non-empty"),
        });
        start += size;
    }
    Ok(BucketDeltaReport { buckets, count: total })
}
