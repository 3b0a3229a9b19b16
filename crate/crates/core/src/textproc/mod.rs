//! Text normalization substrate: prefix cleaning, sentence segmentation,
//! tokenization, stopword classification and n-gram extraction.
//!
//! Everything here is a pure function of its inputs. [`Lexicon`] bundles the
//! two loaded resources (stopwords and prefix patterns) so they can be shared
//! read-only across workers.

mod ngram;
mod prefix;
mod segment;
mod stopwords;
mod tokenize;

use std::path::Path;

pub use ngram::{ngram_slices, ngrams, NGram};
pub use prefix::{clean_prefix, PrefixRules, DEFAULT_PREFIX_PATTERNS};
pub use segment::{segment_sentences, Sentence};
pub use stopwords::{Stopwords, DEFAULT_STOPWORDS};
pub use tokenize::{tokenize, Token};

use crate::Result;

/// Loaded text resources shared by every stage of the toolkit.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    stopwords: Stopwords,
    prefixes: PrefixRules,
}

impl Lexicon {
    pub fn new(stopwords: Stopwords, prefixes: PrefixRules) -> Self {
        Lexicon {
            stopwords,
            prefixes,
        }
    }

    /// Bundled resources, with either file replaced when a path is given.
    pub fn load(stopwords: Option<&Path>, prefixes: Option<&Path>) -> Result<Self> {
        let stopwords = match stopwords {
            Some(path) => Stopwords::from_file(path)?,
            None => Stopwords::default(),
        };
        let prefixes = match prefixes {
            Some(path) => PrefixRules::from_file(path)?,
            None => PrefixRules::default(),
        };
        Ok(Lexicon::new(stopwords, prefixes))
    }

    pub fn stopwords(&self) -> &Stopwords {
        &self.stopwords
    }

    pub fn prefixes(&self) -> &PrefixRules {
        &self.prefixes
    }

    pub fn clean(&self, text: &str) -> String {
        clean_prefix(text, &self.prefixes)
    }

    pub fn tokenize(&self, text: &str) -> Vec<Token> {
        tokenize(text, &self.stopwords)
    }

    /// Token surfaces only, for metric computations that ignore stopword flags.
    pub fn words(&self, text: &str) -> Vec<String> {
        self.tokenize(text).into_iter().map(|t| t.surface).collect()
    }
}
