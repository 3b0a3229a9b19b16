use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::policy::{MultiRef, Report, ScoringPolicy, Truncation, Variant};
use super::rouge::{rouge_l, rouge_n, RougeScore};
use crate::numeric::order_free_mean;
use crate::textproc::Lexicon;
use crate::{Error, Result};

/// Candidate tokens after the policy's truncation rule.
pub fn apply_truncation(
    candidate: &str,
    reference: &[String],
    policy: &ScoringPolicy,
    lexicon: &Lexicon,
) -> Vec<String> {
    match policy.truncation {
        Truncation::None => lexicon.words(candidate),
        Truncation::Chars(n) => {
            let cut = candidate.char_indices().nth(n).map_or(candidate.len(), |(i, _)| i);
            lexicon.words(&candidate[..cut])
        }
        Truncation::MatchReferenceTokens => {
            let mut tokens = lexicon.words(candidate);
            tokens.truncate(reference.len());
            tokens
        }
    }
}

/// Scores already-tokenized sequences with one ROUGE variant.
pub fn score_one(candidate: &[String], reference: &[String], variant: Variant) -> RougeScore {
    match variant {
        Variant::R1 => rouge_n(candidate, reference, 1),
        Variant::R2 => rouge_n(candidate, reference, 2),
        Variant::RL => Ok(rouge_l(candidate, reference)),
    }
    .expect("n-gram order is positive")
}

fn headline(score: &RougeScore, report: Report) -> f64 {
    match report {
        Report::F1 => score.f1,
        Report::Recall => score.recall,
    }
}

/// Scores `candidate` against each reference and combines the results.
///
/// `Max` returns the full score of the reference with the best headline
/// number (first one on ties); `Mean` averages each component.
pub fn score_multi_reference<S: AsRef<str>>(
    candidate: &str,
    references: &[S],
    policy: &ScoringPolicy,
    lexicon: &Lexicon,
) -> Result<RougeScore> {
    if references.is_empty() {
        return Err(Error::NoReferences);
    }
    let untruncated = match policy.truncation {
        Truncation::MatchReferenceTokens => None,
        _ => Some(apply_truncation(candidate, &[], policy, lexicon)),
    };
    let scores: Vec<RougeScore> = references
        .iter()
        .map(|reference| {
            let reference = lexicon.words(reference.as_ref());
            match &untruncated {
                Some(cand) => score_one(cand, &reference, policy.variant),
                None => {
                    let cand = apply_truncation(candidate, &reference, policy, lexicon);
                    score_one(&cand, &reference, policy.variant)
                }
            }
        })
        .collect();

    Ok(match policy.multi_ref {
        MultiRef::Max => {
            let mut best = scores[0];
            for s in &scores[1..] {
                if headline(s, policy.report) > headline(&best, policy.report) {
                    best = *s;
                }
            }
            best
        }
        MultiRef::Mean => {
            let component = |f: fn(&RougeScore) -> f64| {
                let mut v: Vec<f64> = scores.iter().map(f).collect();
                order_free_mean(&mut v).unwrap_or(0.0)
            };
            RougeScore {
                precision: component(|s| s.precision),
                recall: component(|s| s.recall),
                f1: component(|s| s.f1),
            }
        }
    })
}

/// Mean of per-document scores with the policy's headline component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorpusScore {
    pub count: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub report: Report,
    pub headline: f64,
}

/// Streaming mean of per-document scores.
///
/// The mean is independent of the order in which scores are pushed.
#[derive(Debug, Clone, Default)]
pub struct CorpusAccumulator {
    precision: Vec<f64>,
    recall: Vec<f64>,
    f1: Vec<f64>,
}

impl CorpusAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, score: RougeScore) {
        self.precision.push(score.precision);
        self.recall.push(score.recall);
        self.f1.push(score.f1);
    }

    pub fn len(&self) -> usize {
        self.f1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f1.is_empty()
    }

    pub fn finish(mut self, report: Report) -> Result<CorpusScore> {
        let count = self.len();
        let precision = order_free_mean(&mut self.precision).ok_or(Error::EmptyInput("corpus score"))?;
        let recall = order_free_mean(&mut self.recall).unwrap_or(0.0);
        let f1 = order_free_mean(&mut self.f1).unwrap_or(0.0);
        let mean = RougeScore { precision, recall, f1 };
        Ok(CorpusScore {
            count,
            precision,
            recall,
            f1,
            report,
            headline: headline(&mean, report),
        })
    }
}

/// Scores every `(candidate, references)` pair in parallel and averages.
pub fn corpus_score<I, C, S>(pairs: I, policy: &ScoringPolicy, lexicon: &Lexicon) -> Result<CorpusScore>
where
    I: IntoIterator<Item = (C, Vec<S>)>,
    I::IntoIter: Send,
    C: AsRef<str> + Send,
    S: AsRef<str> + Send,
{
    let scores: Vec<RougeScore> = pairs
        .into_iter()
        .par_bridge()
        .map(|(candidate, references)| score_multi_reference(candidate.as_ref(), &references, policy, lexicon))
        .collect::<Result<_>>()?;
    let mut acc = CorpusAccumulator::new();
    for s in scores {
        acc.push(s);
    }
    acc.finish(policy.report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex() -> Lexicon {
        Lexicon::default()
    }

    fn policy(variant: Variant) -> ScoringPolicy {
        ScoringPolicy::new(variant)
    }

    #[test]
    fn chars_truncation() {
        let p = ScoringPolicy { truncation: Truncation::Chars(75), ..Default::default() };
        let long = "word ".repeat(20); // 100 chars
        let got = apply_truncation(&long, &[], &p, &lex());
        assert_eq!(got.len(), 15);
        let short = "ten chars!";
        assert_eq!(apply_truncation(short, &[], &p, &lex()), lex().words(short));
    }

    #[test]
    fn chars_truncation_keeps_partial_word() {
        let p = ScoringPolicy { truncation: Truncation::Chars(8), ..Default::default() };
        assert_eq!(apply_truncation("storms hit", &[], &p, &lex()), ["storms", "h"]);
        let p = ScoringPolicy { truncation: Truncation::Chars(7), ..Default::default() };
        // Characters, not bytes.
        assert_eq!(apply_truncation("ééééé ééé", &[], &p, &lex()), ["ééééé", "é"]);
    }

    #[test]
    fn match_reference_truncation() {
        let p = ScoringPolicy { truncation: Truncation::MatchReferenceTokens, ..Default::default() };
        let cand: String = (0..50).map(|i| format!("c{i} ")).collect();
        let reference: Vec<String> = (0..20).map(|i| format!("r{i}")).collect();
        let got = apply_truncation(&cand, &reference, &p, &lex());
        assert_eq!(got.len(), 20);
        assert_eq!(got[19], "c19");
    }

    #[test]
    fn single_reference_matches_direct() {
        let l = lex();
        let p = policy(Variant::R2);
        let got = score_multi_reference("the cat sat on the mat", &["the cat lay on the mat"], &p, &l).unwrap();
        let direct = score_one(&l.words("the cat sat on the mat"), &l.words("the cat lay on the mat"), Variant::R2);
        assert_eq!(got, direct);
    }

    #[test]
    fn max_over_four_references() {
        let refs = ["a storm came", "markets fell", "the cat sat", "rain again today"];
        let got = score_multi_reference("markets fell", &refs, &policy(Variant::R1), &lex()).unwrap();
        assert_eq!(got.f1, 1.0);
    }

    #[test]
    fn mean_of_two_references() {
        // Candidate "storm hit coast" (3 tokens).
        // Ref A "storm hit coast": P=R=F1=1.
        // Ref B "storm ended": matched 1 -> P=1/3, R=1/2, F1=0.4.
        let p = ScoringPolicy { multi_ref: MultiRef::Mean, ..policy(Variant::R1) };
        let got = score_multi_reference("storm hit coast", &["storm hit coast", "storm ended"], &p, &lex()).unwrap();
        assert!((got.precision - (1.0 + 1.0 / 3.0) / 2.0).abs() < 1e-15);
        assert!((got.recall - 0.75).abs() < 1e-15);
        assert!((got.f1 - 0.7).abs() < 1e-15);
    }

    #[test]
    fn empty_references_rejected() {
        let refs: [&str; 0] = [];
        assert!(matches!(
            score_multi_reference("x", &refs, &policy(Variant::R1), &lex()),
            Err(Error::NoReferences)
        ));
    }

    #[test]
    fn corpus_mean() {
        let mut acc = CorpusAccumulator::new();
        acc.push(RougeScore::from_pr(0.2, 0.2));
        acc.push(RougeScore::from_pr(0.4, 0.4));
        let s = acc.finish(Report::F1).unwrap();
        assert!((s.headline - 0.3).abs() < 1e-15);
        assert_eq!(s.count, 2);
        assert!(matches!(CorpusAccumulator::new().finish(Report::F1), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn corpus_single_pair_and_empty() {
        let l = lex();
        let p = policy(Variant::RL);
        let one = corpus_score(vec![("the cat sat", vec!["the cat ran"])], &p, &l).unwrap();
        let direct = score_multi_reference("the cat sat", &["the cat ran"], &p, &l).unwrap();
        assert_eq!((one.precision, one.recall, one.f1), (direct.precision, direct.recall, direct.f1));
        let empty: Vec<(&str, Vec<&str>)> = vec![];
        assert!(corpus_score(empty, &p, &l).is_err());
    }

    #[test]
    fn recall_headline() {
        let l = lex();
        let p = ScoringPolicy { report: Report::Recall, ..policy(Variant::R1) };
        let s = corpus_score(vec![("storm", vec!["storm coast"])], &p, &l).unwrap();
        assert_eq!(s.headline, 0.5);
        assert_eq!(s.report, Report::Recall);
    }
}
