use crate::textproc::{segment_sentences, Lexicon, Sentence, Token};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ArticleSentence {
    pub sentence: Sentence,
    pub tokens: Vec<Token>,
}

/// Sentence- and token-level view of one cleaned article.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentedArticle {
    pub id: String,
    /// Cleaned source text the sentence spans point into.
    pub text: String,
    pub sentences: Vec<ArticleSentence>,
    pub word_count: usize,
}

impl SegmentedArticle {
    /// Segments and tokenizes already-cleaned text.
    pub fn segment(id: impl Into<String>, text: impl Into<String>, lexicon: &Lexicon) -> Self {
        let text = text.into();
        let sentences: Vec<ArticleSentence> = segment_sentences(&text)
            .into_iter()
            .map(|sentence| {
                let tokens = lexicon.tokenize(&sentence.text);
                ArticleSentence { sentence, tokens }
            })
            .collect();
        let word_count = sentences.iter().map(|s| s.tokens.len()).sum();
        SegmentedArticle {
            id: id.into(),
            text,
            sentences,
            word_count,
        }
    }

    /// Removes the leading prefix block, then segments.
    pub fn from_raw(id: impl Into<String>, raw: &str, lexicon: &Lexicon) -> Self {
        SegmentedArticle::segment(id, lexicon.clean(raw), lexicon)
    }

    pub fn sentence_count(&self) -> usize {
        self.sentences.len()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }

    pub fn split_lead(&self, k: usize) -> Result<LeadSplit<'_>> {
        split_lead(self, k)
    }
}

/// The first `k` sentences of an article and the remainder.
#[derive(Debug, Clone, Copy)]
pub struct LeadSplit<'a> {
    pub lead: &'a [ArticleSentence],
    pub rest: &'a [ArticleSentence],
    pub lead_words: usize,
    pub rest_words: usize,
}

impl<'a> LeadSplit<'a> {
    /// Splits without the non-empty check; an empty article yields two empty halves.
    pub(crate) fn new_unchecked(article: &'a SegmentedArticle, k: usize) -> Self {
        let at = k.min(article.sentences.len());
        let (lead, rest) = article.sentences.split_at(at);
        let count = |s: &[ArticleSentence]| s.iter().map(|x| x.tokens.len()).sum();
        LeadSplit {
            lead,
            rest,
            lead_words: count(lead),
            rest_words: count(rest),
        }
    }

    pub fn lead_tokens(&self) -> impl Iterator<Item = &'a Token> {
        self.lead.iter().flat_map(|s| s.tokens.iter())
    }

    pub fn rest_tokens(&self) -> impl Iterator<Item = &'a Token> {
        self.rest.iter().flat_map(|s| s.tokens.iter())
    }

    pub fn lead_text(&self) -> String {
        join_sentences(self.lead)
    }

    pub fn rest_text(&self) -> String {
        join_sentences(self.rest)
    }
}

pub(crate) fn join_sentences(sentences: &[ArticleSentence]) -> String {
    let mut out = String::new();
    for (i, s) in sentences.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&s.sentence.text);
    }
    out
}

/// Lead is the first `min(k, n)` sentences; rest is everything after.
pub fn split_lead(article: &SegmentedArticle, k: usize) -> Result<LeadSplit<'_>> {
    if k == 0 {
        return Err(Error::InvalidConfig("lead size must be at least 1".into()));
    }
    if article.sentences.is_empty() {
        return Err(Error::EmptyArticle);
    }
    Ok(LeadSplit::new_unchecked(article, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn article(text: &str) -> SegmentedArticle {
        SegmentedArticle::segment("a", text, &Lexicon::default())
    }

    #[test]
    fn six_sentences_split_three_three() {
        let a = article("One ab. Two bc. Three cd. Four de. Five ef. Six fg.");
        let split = a.split_lead(3).unwrap();
        assert_eq!(split.lead_text(), "One ab. Two bc. Three cd.");
        assert_eq!(split.rest_text(), "Four de. Five ef. Six fg.");
        assert_eq!((split.lead_words, split.rest_words), (6, 6));
    }

    #[test]
    fn short_article_is_all_lead() {
        let a = article("Only one here. And two.");
        let split = a.split_lead(3).unwrap();
        assert_eq!(split.lead.len(), 2);
        assert!(split.rest.is_empty());
        assert_eq!(split.rest_words, 0);
    }

    #[test]
    fn hand_counted_ten_sentence_fixture() {
        // Word counts per sentence, counted by hand: 5, 4, 7 | 3, 7, 2, 5, 4, 8, 1.
        let text = "The storm hit the coast. Winds topped 90 mph. \
                    Officials ordered residents in low areas out. \
                    Schools stayed closed. Power was lost to 20,000 homes overnight. \
                    Crews responded. Damage estimates are still pending. \
                    The governor's office declined. Forecasters expect the system to weaken by Friday. \
                    Recovery.";
        let a = article(text);
        assert_eq!(a.sentence_count(), 10);
        let split = a.split_lead(3).unwrap();
        assert_eq!(split.lead_words, 16);
        assert_eq!(split.rest_words, 30);
        assert_eq!(a.word_count, 46);
    }

    #[test]
    fn empty_article_errors() {
        assert!(matches!(article("").split_lead(3), Err(Error::EmptyArticle)));
        assert!(article("x.").split_lead(0).is_err());
    }

    #[test]
    fn word_count_is_sum_of_sentence_tokens() {
        let a = article("Hello there, world. It's 2018! Numbers: 1, 2, 3.");
        assert_eq!(a.word_count, a.tokens().count());
        assert_eq!(a.word_count, 3 + 2 + 4);
    }
}
