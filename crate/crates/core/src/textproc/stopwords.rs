use std::collections::HashSet;
use std::path::Path;

use crate::{Error, Result};

/// The bundled English stopword list (179 entries, version 1).
pub const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords-en-v1.txt");

/// A fixed set of case-folded stopwords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stopwords {
    words: HashSet<String>,
}

impl Default for Stopwords {
    fn default() -> Self {
        Stopwords::parse(DEFAULT_STOPWORDS)
    }
}

impl Stopwords {
    /// One entry per line; blank lines and `#` comments are skipped. Entries are
    /// case-folded.
    pub fn parse(source: &str) -> Self {
        let words = source
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.to_lowercase().replace('\u{2019}', "'"))
            .collect();
        Stopwords { words }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let source = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Stopwords::parse(&source))
    }

    /// `surface` must already be case-folded.
    pub fn contains(&self, surface: &str) -> bool {
        self.words.contains(surface)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_list_size() {
        let sw = Stopwords::default();
        assert_eq!(sw.len(), 179);
        assert!(sw.contains("the"));
        assert!(sw.contains("don't"));
        assert!(!sw.contains("storm"));
    }

    #[test]
    fn parse_skips_comments_and_folds_case() {
        let sw = Stopwords::parse("# header\n\nThe\n  AND \n");
        assert_eq!(sw.len(), 2);
        assert!(sw.contains("the"));
        assert!(sw.contains("and"));
    }
}
