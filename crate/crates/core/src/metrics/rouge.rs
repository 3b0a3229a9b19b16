use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Precision, recall and balanced F-measure.
///
/// For a single candidate/reference comparison `f1` is the harmonic mean of
/// `precision` and `recall`. Averaged scores (multi-reference `Mean`, corpus
/// means) hold per-component means instead.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RougeScore {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl RougeScore {
    pub fn from_counts(matched: usize, candidate_total: usize, reference_total: usize) -> Self {
        let ratio = |total: usize| if total == 0 { 0.0 } else { matched as f64 / total as f64 };
        RougeScore::from_pr(ratio(candidate_total), ratio(reference_total))
    }

    pub fn from_pr(precision: f64, recall: f64) -> Self {
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        RougeScore { precision, recall, f1 }
    }
}

fn counts<T: Hash + Eq>(tokens: &[T], n: usize) -> HashMap<&[T], usize> {
    let mut map = HashMap::new();
    for w in tokens.windows(n) {
        *map.entry(w).or_insert(0) += 1;
    }
    map
}

/// ROUGE-N with clipped n-gram counts. Sequences shorter than `n` score zero.
pub fn rouge_n<T: Hash + Eq>(candidate: &[T], reference: &[T], n: usize) -> Result<RougeScore> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let total = |len: usize| (len + 1).saturating_sub(n);
    let cand = counts(candidate, n);
    let refs = counts(reference, n);
    let matched = cand
        .iter()
        .map(|(gram, &c)| refs.get(gram).map_or(0, |&r| c.min(r)))
        .sum();
    Ok(RougeScore::from_counts(matched, total(candidate.len()), total(reference.len())))
}

/// Length of the longest common subsequence, in O(|a|·|b|) time and O(|b|) space.
pub fn lcs_len<T: Eq>(a: &[T], b: &[T]) -> usize {
    let mut row = vec![0usize; b.len() + 1];
    for x in a {
        let mut diag = 0;
        for (j, y) in b.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if x == y { diag + 1 } else { up.max(row[j]) };
            diag = up;
        }
    }
    row[b.len()]
}

/// ROUGE-L: LCS length over candidate length (precision) and reference length
/// (recall), with β = 1.
pub fn rouge_l<T: Eq>(candidate: &[T], reference: &[T]) -> RougeScore {
    RougeScore::from_counts(lcs_len(candidate, reference), candidate.len(), reference.len())
}
