use serde::{Deserialize, Serialize};

/// A sentence and its byte span in the source text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub text: String,
    pub start: usize,
    pub end: usize,
}

impl Sentence {
    pub fn span(&self) -> std::ops::Range<usize> {
        self.start..self.end
    }
}

impl AsRef<str> for Sentence {
    fn as_ref(&self) -> &str {
        &self.text
    }
}

// Tokens that never end a sentence when followed by a period. Compared
// case-insensitively, without the trailing period.
const ABBREVIATIONS: &[&str] = &[
    "mr", "mrs", "ms", "messrs", "dr", "prof", "sen", "rep", "gov", "gen", "col", "lt", "sgt",
    "capt", "cmdr", "adm", "maj", "rev", "hon", "pres", "supt", "st", "mt", "ft", "ave", "blvd",
    "no", "nos", "vol", "fig", "figs", "pp", "art", "sec", "approx", "vs", "etc", "e.g", "i.e",
    "cf", "al", "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct", "nov",
    "dec", "mon", "tue", "tues", "wed", "thu", "thur", "thurs", "fri", "sat", "sun", "inc",
    "corp", "co", "ltd", "jr", "sr", "u.s", "u.k", "u.n", "d.c", "a.m", "p.m",
];

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?' | '…')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | '”' | '’' | ')' | ']' | '}' | '»')
}

fn is_opener(c: char) -> bool {
    matches!(c, '"' | '\'' | '“' | '‘' | '(' | '[' | '{' | '«')
}

/// Whether the word ending just before a lone period is an abbreviation.
fn is_abbreviation(before: &str) -> bool {
    let word_start = before
        .char_indices()
        .rev()
        .find(|&(_, c)| c.is_whitespace())
        .map(|(i, c)| i + c.len_utf8())
        .unwrap_or(0);
    let word = before[word_start..].trim_start_matches(is_opener);
    if word.is_empty() {
        return false;
    }
    let mut chars = word.chars();
    // Single-letter initials: "J. K. Rowling".
    if let (Some(c), None) = (chars.next(), chars.next()) {
        return c.is_alphabetic();
    }
    let lower = word.to_lowercase();
    if ABBREVIATIONS.contains(&lower.as_str()) {
        return true;
    }
    // Dotted acronyms such as "U.S.A" or "N.Y".
    word.contains('.')
        && word
            .split('.')
            .all(|part| !part.is_empty() && part.chars().count() <= 2 && part.chars().all(char::is_alphabetic))
}

/// Splits `text` into sentences with a terminator + abbreviation-exception rule.
///
/// A sentence ends after a run of `.`, `!`, `?` or `…` (plus any closing quotes
/// or brackets) when the run is followed by whitespace and the next visible
/// character is not lower-case, unless the run is a single period closing an
/// abbreviation, an initial or a dotted acronym. A blank line always ends a
/// sentence. Trailing text without a terminator forms the last sentence.
pub fn segment_sentences(text: &str) -> Vec<Sentence> {
    let mut sentences = Vec::new();
    let mut start: Option<usize> = None;
    let push = |s: usize, e: usize, out: &mut Vec<Sentence>| {
        let slice = text[s..e].trim_end();
        if !slice.is_empty() {
            out.push(Sentence {
                text: slice.to_string(),
                start: s,
                end: s + slice.len(),
            });
        }
    };

    let bytes_len = text.len();
    let mut iter = text.char_indices().peekable();
    while let Some((i, c)) = iter.next() {
        if c.is_whitespace() {
            if c == '\n' && start.is_some() {
                // Look ahead over the whitespace run for a blank line.
                let mut newlines = 1;
                let mut it = iter.clone();
                while let Some(&(_, w)) = it.peek() {
                    if !w.is_whitespace() {
                        break;
                    }
                    if w == '\n' {
                        newlines += 1;
                    }
                    it.next();
                }
                if newlines >= 2 {
                    push(start.take().unwrap(), i, &mut sentences);
                }
            }
            continue;
        }
        let s = *start.get_or_insert(i);
        if !is_terminator(c) {
            continue;
        }

        // Extend over the terminator run and trailing closers.
        let mut end = i + c.len_utf8();
        let mut run_len = 1;
        while let Some(&(j, d)) = iter.peek() {
            if is_terminator(d) {
                run_len += 1;
            } else if !is_closer(d) {
                break;
            }
            end = j + d.len_utf8();
            iter.next();
        }

        if end == bytes_len {
            push(s, end, &mut sentences);
            start = None;
            continue;
        }
        let next_is_space = text[end..].chars().next().is_some_and(char::is_whitespace);
        if !next_is_space {
            continue;
        }
        let Some(next_visible) = text[end..].chars().find(|c| !c.is_whitespace()) else {
            push(s, end, &mut sentences);
            start = None;
            continue;
        };
        if next_visible.is_lowercase() {
            continue;
        }
        if c == '.' && run_len == 1 && is_abbreviation(&text[s..i]) {
            continue;
        }
        push(s, end, &mut sentences);
        start = None;
    }
    if let Some(s) = start {
        push(s, bytes_len, &mut sentences);
    }
    sentences
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn texts(input: &str) -> Vec<String> {
        segment_sentences(input).into_iter().map(|s| s.text).collect()
    }

    #[test]
    fn empty_input() {
        assert!(segment_sentences("").is_empty());
        assert!(segment_sentences("   \n\t ").is_empty());
    }

    #[test]
    fn abbreviation_does_not_split() {
        assert_eq!(
            texts("It rained. Dr. Smith left. Done!"),
            ["It rained.", "Dr. Smith left.", "Done!"]
        );
    }

    #[test]
    fn trailing_text_without_terminator() {
        assert_eq!(texts("no terminator"), ["no terminator"]);
        assert_eq!(texts("One. two three"), ["One. two three"]);
        assert_eq!(texts("One. Two three"), ["One.", "Two three"]);
    }

    #[test]
    fn acronyms_initials_and_decimals() {
        assert_eq!(
            texts("The U.S. Senate voted. J. K. Rowling wrote it. Rates hit 3.5 percent."),
            ["The U.S. Senate voted.", "J. K. Rowling wrote it.", "Rates hit 3.5 percent."]
        );
    }

    #[test]
    fn quotes_and_mixed_terminators() {
        assert_eq!(
            texts("He said \"Stop.\" Then he left. \"Why?\" she asked. Really?! Yes."),
            ["He said \"Stop.\"", "Then he left.", "\"Why?\" she asked.", "Really?!", "Yes."]
        );
    }

    #[test]
    fn blank_line_breaks_headline() {
        assert_eq!(
            texts("Storm Warning Issued\n\nThe storm hit. It was bad."),
            ["Storm Warning Issued", "The storm hit.", "It was bad."]
        );
        assert_eq!(texts("A line\nwrapped here."), ["A line\nwrapped here."]);
    }

    #[test]
    fn spans_point_into_source() {
        let src = "  First one.   Second one!  ";
        for s in segment_sentences(src) {
            assert_eq!(&src[s.span()], s.text);
        }
    }

    proptest! {
        #[test]
        fn spans_sorted_disjoint_and_cover_content(text in "[A-Za-z .!?\"\n]{0,80}") {
            let sents = segment_sentences(&text);
            let mut last_end = 0;
            for s in &sents {
                prop_assert!(s.start >= last_end);
                prop_assert!(s.start < s.end && s.end <= text.len());
                prop_assert_eq!(&text[s.span()], s.text.as_str());
                prop_assert!(!s.text.trim().is_empty());
                last_end = s.end;
            }
            let rejoined: String = sents.iter().flat_map(|s| s.text.chars()).filter(|c| !c.is_whitespace()).collect();
            let original: String = text.chars().filter(|c| !c.is_whitespace()).collect();
            prop_assert_eq!(rejoined, original);
        }
    }
}
