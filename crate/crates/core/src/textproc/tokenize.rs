use serde::{Deserialize, Serialize};
use unicode_segmentation::UnicodeSegmentation;

use super::Stopwords;

/// A case-folded word token.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub is_stopword: bool,
}

impl AsRef<str> for Token {
    fn as_ref(&self) -> &str {
        &self.surface
    }
}

/// Splits `text` on Unicode (UAX #29) word boundaries.
///
/// Surfaces are lower-cased with typographic apostrophes folded to `'`, so
/// `"cat’s"` and `"cat's"` are the same token. Fragments without a letter or
/// digit are dropped; numbers are kept.
pub fn tokenize(text: &str, stopwords: &Stopwords) -> Vec<Token> {
    text.unicode_words()
        .map(|w| {
            let mut surface = w.to_lowercase();
            if surface.contains('\u{2019}') {
                surface = surface.replace('\u{2019}', "'");
            }
            let is_stopword = stopwords.contains(&surface);
            Token {
                surface,
                is_stopword,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn surfaces(text: &str) -> Vec<String> {
        tokenize(text, &Stopwords::default())
            .into_iter()
            .map(|t| t.surface)
            .collect()
    }

    #[test]
    fn empty() {
        assert!(surfaces("").is_empty());
        assert!(surfaces(" -- ... !").is_empty());
    }

    #[test]
    fn case_folding() {
        assert_eq!(surfaces("Hello HELLO"), ["hello", "hello"]);
    }

    #[test]
    fn apostrophes_numbers_and_stopwords() {
        let tokens = tokenize("The cat's hat, 2018.", &Stopwords::default());
        let got: Vec<(&str, bool)> = tokens
            .iter()
            .map(|t| (t.surface.as_str(), t.is_stopword))
            .collect();
        assert_eq!(
            got,
            [("the", true), ("cat's", false), ("hat", false), ("2018", false)]
        );
    }

    #[test]
    fn typographic_apostrophe_folds() {
        let tokens = tokenize("Don’t", &Stopwords::default());
        assert_eq!(tokens[0].surface, "don't");
        assert!(tokens[0].is_stopword);
    }

    proptest! {
        #[test]
        fn case_invariant(text in "[A-Za-z0-9 ,.'-]{0,60}") {
            prop_assert_eq!(surfaces(&text), surfaces(&text.to_uppercase()));
            prop_assert_eq!(surfaces(&text), surfaces(&text.to_lowercase()));
        }

        #[test]
        fn tokens_are_nonempty_and_alphanumeric(text in "\\PC{0,40}") {
            for t in surfaces(&text) {
                prop_assert!(!t.is_empty());
                prop_assert!(t.chars().any(char::is_alphanumeric));
            }
        }
    }
}
