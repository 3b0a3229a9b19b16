use std::collections::HashSet;

use crate::textproc::Token;

/// The lead has no non-stopword word types, so the overlap ratio is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmptyLeadContent;

/// Distinct non-stopword surfaces.
pub fn content_types<'a, I>(tokens: I) -> HashSet<&'a str>
where
    I: IntoIterator<Item = &'a Token>,
{
    tokens
        .into_iter()
        .filter(|t| !t.is_stopword)
        .map(|t| t.surface.as_str())
        .collect()
}

/// Distinct surfaces, stopwords included.
pub fn word_types<'a, I>(tokens: I) -> HashSet<&'a str>
where
    I: IntoIterator<Item = &'a Token>,
{
    tokens.into_iter().map(|t| t.surface.as_str()).collect()
}

/// `|a ∩ b| / |a|`, or `None` when `a` is empty.
pub fn containment(a: &HashSet<&str>, b: &HashSet<&str>) -> Option<f64> {
    if a.is_empty() {
        return None;
    }
    let shared = a.iter().filter(|t| b.contains(*t)).count();
    Some(shared as f64 / a.len() as f64)
}

/// Fraction of the lead's distinct non-stopword types that also occur in the rest.
pub fn overlap_ratio<'a, L, R>(lead: L, rest: R) -> Result<f64, EmptyLeadContent>
where
    L: IntoIterator<Item = &'a Token>,
    R: IntoIterator<Item = &'a Token>,
{
    let lead = content_types(lead);
    if lead.is_empty() {
        return Err(EmptyLeadContent);
    }
    let rest = content_types(rest);
    containment(&lead, &rest).ok_or(EmptyLeadContent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textproc::{tokenize, Stopwords};
    use proptest::prelude::*;

    fn toks(text: &str) -> Vec<Token> {
        tokenize(text, &Stopwords::default())
    }

    fn ratio(lead: &str, rest: &str) -> Result<f64, EmptyLeadContent> {
        overlap_ratio(&toks(lead), &toks(rest))
    }

    #[test]
    fn full_containment() {
        assert_eq!(ratio("storm hit coast", "the coast saw a storm that hit hard"), Ok(1.0));
    }

    #[test]
    fn disjoint() {
        assert_eq!(ratio("storm hit coast", "markets rallied today"), Ok(0.0));
    }

    #[test]
    fn stopwords_ignored() {
        assert_eq!(ratio("the storm coast", "a storm passed"), Ok(0.5));
    }

    #[test]
    fn empty_lead_content() {
        assert_eq!(ratio("the and of", "storm"), Err(EmptyLeadContent));
        assert_eq!(ratio("", "storm"), Err(EmptyLeadContent));
    }

    #[test]
    fn empty_rest_is_zero() {
        assert_eq!(ratio("storm", ""), Ok(0.0));
    }

    fn token(s: &str, stop: bool) -> Token {
        Token { surface: s.to_string(), is_stopword: stop }
    }

    fn arb_tokens() -> impl Strategy<Value = Vec<Token>> {
        prop::collection::vec(0u8..12, 0..20).prop_map(|v| {
            v.into_iter()
                .map(|w| token(&format!("w{w}"), w < 2))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn bounded(lead in arb_tokens(), rest in arb_tokens()) {
            if let Ok(r) = overlap_ratio(&lead, &rest) {
                prop_assert!((0.0..=1.0).contains(&r));
            }
        }

        #[test]
        fn duplication_invariant(lead in arb_tokens(), rest in arb_tokens()) {
            let lead2: Vec<Token> = lead.iter().chain(lead.iter()).cloned().collect();
            let rest2: Vec<Token> = rest.iter().chain(rest.iter()).cloned().collect();
            prop_assert_eq!(overlap_ratio(&lead, &rest), overlap_ratio(&lead2, &rest2));
        }

        #[test]
        fn monotone_in_rest(lead in arb_tokens(), rest in arb_tokens(), pick in 0usize..20) {
            if let Ok(before) = overlap_ratio(&lead, &rest) {
                let content: Vec<&Token> = lead.iter().filter(|t| !t.is_stopword).collect();
                let mut grown = rest.clone();
                grown.push(content[pick % content.len()].clone());
                prop_assert!(overlap_ratio(&lead, &grown).unwrap() >= before);
            }
        }
    }
}
