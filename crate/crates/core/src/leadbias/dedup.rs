use std::collections::HashSet;
use std::fmt;

use sha2::{Digest, Sha256};

use super::SegmentedArticle;

/// Stable 128-bit fingerprint of case-folded, whitespace-collapsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint([u8; 16]);

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

pub fn fingerprint(text: &str) -> Fingerprint {
    let mut hasher = Sha256::new();
    for (i, word) in text.split_whitespace().enumerate() {
        if i > 0 {
            hasher.update(b" ");
        }
        hasher.update(word.to_lowercase().as_bytes());
    }
    let digest = hasher.finalize();
    let mut out = [0u8; 16];
    out.copy_from_slice(&digest[..16]);
    Fingerprint(out)
}

impl SegmentedArticle {
    pub fn fingerprint(&self) -> Fingerprint {
        fingerprint(&self.text)
    }
}

/// Fingerprints of evaluation-set articles that must not appear in training data.
/// Built once, then shared read-only.
#[derive(Debug, Clone, Default)]
pub struct Blocklist {
    prints: HashSet<Fingerprint>,
}

impl Blocklist {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert_text(&mut self, text: &str) -> bool {
        self.prints.insert(fingerprint(text))
    }

    pub fn contains(&self, print: &Fingerprint) -> bool {
        self.prints.contains(print)
    }

    pub fn len(&self) -> usize {
        self.prints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prints.is_empty()
    }
}

impl<S: AsRef<str>> FromIterator<S> for Blocklist {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut list = Blocklist::new();
        for text in iter {
            list.insert_text(text.as_ref());
        }
        list
    }
}

/// `true` keeps the article; `false` means it matches an evaluation article.
pub fn dedup_filter(article: &SegmentedArticle, blocklist: &Blocklist) -> bool {
    !blocklist.contains(&article.fingerprint())
}
