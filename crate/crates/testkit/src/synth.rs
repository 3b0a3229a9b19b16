//! Synthetic news-like articles with a known filter outcome.
//!
//! Articles are built from invented content words and a handful of English
//! stopwords, one capitalized sentence at a time, so sentence boundaries, word
//! counts and content-word sets are all known exactly. The expected rejection
//! reasons are derived from those quantities alone.

use std::collections::HashSet;
use std::io::{self, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Stopwords the generator uses. All of them are in the default list, none is
/// an abbreviation and none is a single letter.
pub const STOPWORDS: [&str; 8] = ["the", "and", "of", "to", "in", "for", "with", "on"];

/// Rejection reason names in canonical order.
pub const REASONS: [&str; 9] = [
    "TooFewSentences",
    "LeadTooShort",
    "LeadTooLong",
    "RestTooShort",
    "RestTooLong",
    "LeadRepeatedInRest",
    "EmptyLeadContent",
    "OverlapBelowThreshold",
    "Duplicate",
];

/// The thresholds the ground truth is computed against.
#[derive(Debug, Clone, Copy)]
pub struct Rules {
    pub min_sentences: usize,
    pub lead_min_words: usize,
    pub lead_max_words: usize,
    pub rest_min_words: usize,
    pub rest_max_words: usize,
    pub overlap_threshold: f64,
    pub lead_k: usize,
}

impl Default for Rules {
    fn default() -> Self {
        Rules {
            min_sentences: 6,
            lead_min_words: 10,
            lead_max_words: 150,
            rest_min_words: 150,
            rest_max_words: 1200,
            overlap_threshold: 0.65,
            lead_k: 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticArticle {
    pub id: String,
    pub text: String,
    /// Sentences as words, first word capitalized, without the final period.
    pub sentences: Vec<Vec<String>>,
    pub blocked: bool,
    pub lead_words: usize,
    pub rest_words: usize,
    pub overlap: Option<f64>,
    pub expected: Vec<&'static str>,
}

impl SyntheticArticle {
    pub fn passes(&self) -> bool {
        self.expected.is_empty()
    }

    pub fn sentence_texts(&self) -> Vec<String> {
        self.sentences.iter().map(|s| format!("{}.", s.join(" "))).collect()
    }

    pub fn lead_text(&self, k: usize) -> String {
        let texts = self.sentence_texts();
        texts[..k.min(texts.len())].join(" ")
    }

    pub fn rest_text(&self, k: usize) -> String {
        let texts = self.sentence_texts();
        texts[k.min(texts.len())..].join(" ")
    }

    /// `{"id", "text"}` as one JSON line, without the newline.
    pub fn json(&self) -> String {
        serde_json::json!({ "id": self.id, "text": self.text }).to_string()
    }
}

fn capitalize(word: &str) -> String {
    let mut c = word.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

/// Expected reasons, in canonical order, for the given measurements.
pub fn expected_reasons(
    rules: &Rules,
    sentences: &[Vec<String>],
    blocked: bool,
) -> (Vec<&'static str>, usize, usize, Option<f64>) {
    let k = rules.lead_k.min(sentences.len());
    let (lead, rest) = sentences.split_at(k);
    let words = |s: &[Vec<String>]| s.iter().map(Vec::len).sum::<usize>();
    let (lead_words, rest_words) = (words(lead), words(rest));
    let stop: HashSet<&str> = STOPWORDS.into_iter().collect();
    let content = |s: &[Vec<String>]| -> HashSet<String> {
        s.iter()
            .flatten()
            .map(|w| w.to_lowercase())
            .filter(|w| !stop.contains(w.as_str()))
            .collect()
    };
    let (lead_types, rest_types) = (content(lead), content(rest));
    let overlap = (!lead_types.is_empty())
        .then(|| lead_types.intersection(&rest_types).count() as f64 / lead_types.len() as f64);
    let repeated = lead.iter().any(|l| rest.contains(l));

    let checks = [
        sentences.len() < rules.min_sentences,
        lead_words < rules.lead_min_words,
        lead_words > rules.lead_max_words,
        rest_words < rules.rest_min_words,
        rest_words > rules.rest_max_words,
        repeated,
        overlap.is_none(),
        overlap.is_some_and(|r| r < rules.overlap_threshold),
        blocked,
    ];
    let reasons = REASONS.iter().zip(checks).filter(|(_, hit)| *hit).map(|(r, _)| *r).collect();
    (reasons, lead_words, rest_words, overlap)
}

pub struct Generator {
    rng: ChaCha8Rng,
    vocab: Vec<String>,
    rules: Rules,
    next_id: usize,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator::with_rules(seed, Rules::default())
    }

    pub fn with_rules(seed: u64, rules: Rules) -> Self {
        const CONSONANTS: &[u8] = b"bdgkmptvz";
        const VOWELS: &[u8] = b"aiou";
        let mut vocab = Vec::new();
        for &c1 in CONSONANTS {
            for &v1 in VOWELS {
                for &c2 in CONSONANTS {
                    for &v2 in VOWELS {
                        for &c3 in &CONSONANTS[..4] {
                            for &v3 in &VOWELS[..2] {
                                vocab.push(String::from_utf8(vec![c1, v1, c2, v2, c3, v3]).unwrap());
                            }
                        }
                    }
                }
            }
        }
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            vocab,
            rules,
            next_id: 0,
        }
    }

    pub fn rules(&self) -> &Rules {
        &self.rules
    }

    fn word(&mut self) -> String {
        self.vocab.choose(&mut self.rng).unwrap().clone()
    }

    fn stopword(&mut self) -> String {
        STOPWORDS.choose(&mut self.rng).unwrap().to_string()
    }

    /// Splits `total` into `parts` positive integers.
    fn split(&mut self, total: usize, parts: usize) -> Vec<usize> {
        if parts == 0 {
            return Vec::new();
        }
        let total = total.max(parts);
        let mut cuts: Vec<usize> = (1..total).collect::<Vec<_>>();
        cuts.shuffle(&mut self.rng);
        let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
        cuts.sort_unstable();
        let mut out = Vec::with_capacity(parts);
        let mut prev = 0;
        for c in cuts.into_iter().chain([total]) {
            out.push(c - prev);
            prev = c;
        }
        out
    }

    fn pick_total(&mut self, low: usize, high: usize, ceiling: usize) -> usize {
        match self.rng.gen_range(0..10) {
            0 | 1 => self.rng.gen_range(1..low),
            2 => *[low - 1, low, high, high + 1].choose(&mut self.rng).unwrap(),
            3 => self.rng.gen_range(high + 1..=ceiling),
            _ => self.rng.gen_range(low..=high),
        }
    }

    pub fn article(&mut self) -> SyntheticArticle {
        let r = self.rules;
        let n = match self.rng.gen_range(0..10) {
            0 => self.rng.gen_range(1..r.min_sentences),
            1 => r.min_sentences - 1 + self.rng.gen_range(0..2),
            _ => self.rng.gen_range(r.min_sentences..=r.min_sentences + 14),
        };
        let m = n.min(r.lead_k);
        let lead_total = self.pick_total(r.lead_min_words, r.lead_max_words, r.lead_max_words + 50).max(m);
        let rest_total = if n > m {
            self.pick_total(r.rest_min_words, r.rest_max_words, r.rest_max_words + 200).max(n - m)
        } else {
            0
        };

        // Lead: content words from a small pool so types repeat, or stopwords only.
        let stop_only = self.rng.gen_bool(0.05);
        let pool: Vec<String> = (0..self.rng.gen_range(1..=lead_total.max(1))).map(|_| self.word()).collect();
        let mut sentences: Vec<Vec<String>> = Vec::with_capacity(n);
        for len in self.split(lead_total, m) {
            let words = (0..len)
                .map(|_| {
                    if stop_only || self.rng.gen_bool(0.3) {
                        self.stopword()
                    } else {
                        pool.choose(&mut self.rng).unwrap().clone()
                    }
                })
                .collect();
            sentences.push(words);
        }

        // Rest: plant a share of the lead's content types, fill the remainder.
        let lead_types: Vec<String> = {
            let mut seen = HashSet::new();
            sentences.iter().flatten().filter(|w| !STOPWORDS.contains(&w.as_str()) && seen.insert(*w)).cloned().collect()
        };
        let share: f64 = match self.rng.gen_range(0..4) {
            0 => self.rng.gen_range(0.55..0.75),
            _ => self.rng.gen(),
        };
        let mut planted: Vec<String> = lead_types.clone();
        planted.shuffle(&mut self.rng);
        planted.truncate((share * lead_types.len() as f64).round() as usize);
        let mut rest_words: Vec<String> = planted;
        while rest_words.len() < rest_total {
            let w = if self.rng.gen_bool(0.3) { self.stopword() } else { self.word() };
            rest_words.push(w);
        }
        rest_words.truncate(rest_total);
        rest_words.shuffle(&mut self.rng);
        let mut rest_iter = rest_words.into_iter();
        for len in self.split(rest_total, n - m) {
            sentences.push(rest_iter.by_ref().take(len).collect());
        }
        for s in &mut sentences {
            s[0] = capitalize(&s[0]);
        }
        if n > m && m > 0 && self.rng.gen_bool(0.1) {
            let from = self.rng.gen_range(0..m);
            let to = self.rng.gen_range(m..n);
            sentences[to] = sentences[from].clone();
        }

        let blocked = self.rng.gen_bool(0.05);
        let (expected, lead_words, rest_words, overlap) = expected_reasons(&r, &sentences, blocked);
        let mut text = String::new();
        for (i, s) in sentences.iter().enumerate() {
            if i > 0 {
                text.push_str(if self.rng.gen_bool(0.05) { "\n\n" } else { " " });
            }
            text.push_str(&s.join(" "));
            text.push('.');
        }
        let id = format!("syn-{:06}", self.next_id);
        self.next_id += 1;
        SyntheticArticle {
            id,
            text,
            sentences,
            blocked,
            lead_words,
            rest_words,
            overlap,
            expected,
        }
    }

    /// `n` articles plus the texts of those marked as blocked.
    pub fn corpus(&mut self, n: usize) -> (Vec<SyntheticArticle>, Vec<String>) {
        let articles: Vec<SyntheticArticle> = (0..n).map(|_| self.article()).collect();
        let blocked = articles.iter().filter(|a| a.blocked).map(|a| a.text.clone()).collect();
        (articles, blocked)
    }

    /// A plain article of about `words` words with a reference summary, for
    /// volume tests. The filter outcome is not tracked, but roughly half of
    /// the articles reuse their lead vocabulary in the rest and tend to pass.
    pub fn bulk_record(&mut self, words: usize) -> String {
        let pool: Vec<String> = (0..40).map(|_| self.word()).collect();
        let echo = self.rng.gen_bool(0.5);
        let mut sentences = Vec::new();
        let mut left = words.max(1);
        while left > 0 {
            let len = self.rng.gen_range(8..=30).min(left);
            left -= len;
            let from_pool = sentences.len() < 3 || (echo && self.rng.gen_bool(0.5));
            let mut s: Vec<String> = (0..len)
                .map(|_| {
                    if self.rng.gen_bool(0.35) {
                        self.stopword()
                    } else if from_pool {
                        pool.choose(&mut self.rng).unwrap().clone()
                    } else {
                        self.word()
                    }
                })
                .collect();
            s[0] = capitalize(&s[0]);
            sentences.push(format!("{}.", s.join(" ")));
        }
        let summary = sentences[..sentences.len().min(2)].join(" ");
        let id = format!("bulk-{:07}", self.next_id);
        self.next_id += 1;
        serde_json::json!({ "id": id, "text": sentences.join(" "), "summary": summary }).to_string()
    }
}

/// Writes `docs` bulk records averaging `avg_words` words (uniform in
/// `[avg/2, 3*avg/2]`) as JSONL.
pub fn write_bulk_corpus<W: Write>(mut out: W, docs: usize, avg_words: usize, seed: u64) -> io::Result<()> {
    let mut g = Generator::new(seed);
    let mut lengths = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for _ in 0..docs {
        let words = lengths.gen_range(avg_words / 2..=avg_words * 3 / 2);
        writeln!(out, "{}", g.bulk_record(words))?;
    }
    out.flush()
}
