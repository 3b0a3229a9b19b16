use std::collections::HashSet;
use std::hash::Hash;

use crate::{Error, Result};

/// A contiguous run of `n` token surfaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NGram(Vec<String>);

impl NGram {
    pub fn new(tokens: Vec<String>) -> Self {
        NGram(tokens)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn tokens(&self) -> &[String] {
        &self.0
    }
}

/// Distinct contiguous n-grams of `tokens`; empty when `tokens.len() < n`.
pub fn ngrams<T: AsRef<str>>(tokens: &[T], n: usize) -> Result<HashSet<NGram>> {
    let words: Vec<&str> = tokens.iter().map(AsRef::as_ref).collect();
    Ok(ngram_slices(&words, n)?
        .into_iter()
        .map(|w| NGram(w.iter().map(|t| t.to_string()).collect()))
        .collect())
}

/// Borrowing variant of [`ngrams`] over any hashable item type.
pub fn ngram_slices<T: Hash + Eq>(tokens: &[T], n: usize) -> Result<HashSet<&[T]>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    Ok(tokens.windows(n).collect())
}
