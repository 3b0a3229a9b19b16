//! Brute-force reference implementations.

use std::collections::{HashMap, HashSet};

/// Precision, recall and F1 from raw counts, 0 when a denominator is 0.
pub fn prf(matched: usize, cand: usize, reference: usize) -> (f64, f64, f64) {
    let p = if cand == 0 { 0.0 } else { matched as f64 / cand as f64 };
    let r = if reference == 0 { 0.0 } else { matched as f64 / reference as f64 };
    let f = if p + r == 0.0 { 0.0 } else { 2.0 * p * r / (p + r) };
    (p, r, f)
}

/// Clipped n-gram overlap counted by explicit multiset matching: each
/// candidate n-gram consumes one unused equal reference n-gram, if any.
pub fn rouge_n(cand: &[&str], reference: &[&str], n: usize) -> (f64, f64, f64) {
    let grams = |s: &[&str]| -> Vec<Vec<String>> {
        if s.len() < n {
            return Vec::new();
        }
        (0..=s.len() - n).map(|i| s[i..i + n].iter().map(|t| t.to_string()).collect()).collect()
    };
    let c = grams(cand);
    let r = grams(reference);
    let mut used = vec![false; r.len()];
    let mut matched = 0;
    for g in &c {
        if let Some(j) = (0..r.len()).find(|&j| !used[j] && r[j] == *g) {
            used[j] = true;
            matched += 1;
        }
    }
    prf(matched, c.len(), r.len())
}

/// Longest common subsequence by enumerating every subsequence of the shorter
/// input. Exponential; meant for inputs of ten tokens or fewer.
pub fn lcs_exhaustive(a: &[&str], b: &[&str]) -> usize {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    assert!(short.len() <= 16, "exhaustive LCS is limited to short inputs");
    let is_subsequence = |sub: &[&str]| {
        let mut it = long.iter();
        sub.iter().all(|x| it.any(|y| y == x))
    };
    let mut best = 0;
    for mask in 0u32..(1 << short.len()) {
        let len = mask.count_ones() as usize;
        if len <= best {
            continue;
        }
        let sub: Vec<&str> = (0..short.len()).filter(|i| mask & (1 << i) != 0).map(|i| short[i]).collect();
        if is_subsequence(&sub) {
            best = len;
        }
    }
    best
}

pub fn rouge_l(cand: &[&str], reference: &[&str]) -> (f64, f64, f64) {
    prf(lcs_exhaustive(cand, reference), cand.len(), reference.len())
}

/// `|types(a) ∩ types(b)| / |types(a)|` over the words not in `stop`,
/// or `None` when `a` has no such words.
pub fn type_overlap(a: &[&str], b: &[&str], stop: &HashSet<&str>) -> Option<f64> {
    let content = |s: &[&str]| -> HashSet<String> {
        s.iter()
            .map(|w| w.to_lowercase())
            .filter(|w| !stop.contains(w.as_str()))
            .collect()
    };
    let a = content(a);
    if a.is_empty() {
        return None;
    }
    let b = content(b);
    Some(a.iter().filter(|w| b.contains(*w)).count() as f64 / a.len() as f64)
}

/// Number of n-gram occurrences per distinct n-gram.
pub fn ngram_counts(tokens: &[&str], n: usize) -> HashMap<Vec<String>, usize> {
    let mut out = HashMap::new();
    if n > 0 && tokens.len() >= n {
        for w in tokens.windows(n) {
            *out.entry(w.iter().map(|t| t.to_string()).collect()).or_insert(0) += 1;
        }
    }
    out
}

/// Plain mean, summed in sorted order.
pub fn mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Some(v.iter().sum::<f64>() / v.len() as f64)
}
