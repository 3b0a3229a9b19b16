use std::path::Path;

use regex::Regex;

use crate::{Error, Result};

/// The bundled prefix patterns (version 1).
pub const DEFAULT_PREFIX_PATTERNS: &str = include_str!("../../data/prefix-patterns-v1.txt");

/// Ordered set of article-prefix patterns, each anchored at document start.
#[derive(Debug, Clone)]
pub struct PrefixRules {
    patterns: Vec<Regex>,
}

impl Default for PrefixRules {
    fn default() -> Self {
        PrefixRules::parse(DEFAULT_PREFIX_PATTERNS).expect("bundled prefix patterns compile")
    }
}

impl PrefixRules {
    /// One regular expression per line; blank lines and `#` comments are skipped.
    /// Patterns are anchored at the start of the text, after optional whitespace.
    pub fn parse(source: &str) -> Result<Self> {
        let mut patterns = Vec::new();
        for (idx, line) in source.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let re = Regex::new(&format!(r"^\s*(?:{line})"))
                .map_err(|source| Error::Pattern { line: idx + 1, source })?;
            patterns.push(re);
        }
        Ok(PrefixRules { patterns })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let source = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        PrefixRules::parse(&source)
    }

    pub fn empty() -> Self {
        PrefixRules { patterns: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    fn leading_match(&self, text: &str) -> Option<usize> {
        self.patterns
            .iter()
            .filter_map(|re| re.find(text))
            .map(|m| m.end())
            .filter(|&end| end > 0)
            .max()
    }
}

/// Strips the leading prefix block (dateline, byline, agency tag) from `text`.
///
/// Stacked prefixes such as `"LONDON (Reuters) - (CNN) -- "` are treated as a
/// single block, so the result never starts with another removable prefix and
/// the function is idempotent. Text without a prefix is returned unchanged.
pub fn clean_prefix(text: &str, rules: &PrefixRules) -> String {
    let mut rest = text;
    while let Some(end) = rules.leading_match(rest) {
        // Never strip the whole document; a bare dateline is content.
        if rest[end..].trim().is_empty() {
            break;
        }
        rest = &rest[end..];
    }
    rest.to_string()
}
