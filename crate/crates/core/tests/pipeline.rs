use std::collections::BTreeMap;
use std::io::{self, Write};

use leadkit::leadbias::{Blocklist, FilterConfig, FilterDecision};
use leadkit::pipeline::{load_blocklist, run_clean, run_filter, run_pairs, PipelineConfig};
use leadkit::{Error, Lexicon};
use leadkit_testkit::synth::Generator;

const GOLDEN_TEXT: &str = "LONDON, England (CNN) -- The city council approved a new budget for public parks on Monday. \
The budget adds money for park maintenance and new playgrounds. \
Council members said the parks plan would take two years.\n\n\
On Monday, members of the council debated the budget for hours. \
Supporters said public parks and playgrounds need maintenance money. \
The new plan was approved, and work on the parks would start in two years, the city said.";

// Lead content types: 20; 17 of them reappear in the rest (not adds, park, take).
const GOLDEN_PAIR: &str = r#"{"id":"golden-1","source":"On Monday, members of the council debated the budget for hours. Supporters said public parks and playgrounds need maintenance money. The new plan was approved, and work on the parks would start in two years, the city said.","target":"The city council approved a new budget for public parks on Monday. The budget adds money for park maintenance and new playgrounds. Council members said the parks plan would take two years.","overlap_ratio":0.85}
"#;

const GOLDEN_DECISION: &str = r#"{"id":"golden-1","passed":true,"reasons":[],"overlap_ratio":0.85,"lead_words":32,"rest_words":38,"sentences":6}
"#;

fn golden_config() -> PipelineConfig {
    PipelineConfig {
        worker_count: 1,
        filter: FilterConfig {
            rest_min_words: 30,
            ..FilterConfig::default()
        },
        ..Default::default()
    }
}

fn filter(input: &str, config: &PipelineConfig, blocklist: &Blocklist) -> (String, String) {
    let (mut pairs, mut audit) = (Vec::new(), Vec::new());
    run_filter(input.as_bytes(), &mut pairs, &mut audit, config, &Lexicon::default(), blocklist).unwrap();
    (String::from_utf8(pairs).unwrap(), String::from_utf8(audit).unwrap())
}

fn synthetic_input(seed: u64, n: usize) -> (String, Blocklist) {
    let (articles, blocked) = Generator::new(seed).corpus(n);
    (articles.iter().map(|a| a.json() + "\n").collect(), blocked.iter().collect())
}

#[test]
fn golden_training_pair() {
    let line = serde_json::json!({ "id": "golden-1", "text": GOLDEN_TEXT }).to_string();
    let (pairs, audit) = filter(&line, &golden_config(), &Blocklist::new());
    assert_eq!(audit, GOLDEN_DECISION);
    assert_eq!(pairs, GOLDEN_PAIR);
}

#[test]
fn output_is_identical_for_any_worker_count() {
    let (input, blocklist) = synthetic_input(21, 1500);
    let runs: Vec<(String, String)> = [1, 2, 4, 1]
        .into_iter()
        .map(|w| filter(&input, &PipelineConfig { worker_count: w, ..Default::default() }, &blocklist))
        .collect();
    assert!(!runs[0].0.is_empty());
    for r in &runs[1..] {
        assert_eq!(r, &runs[0]);
    }
}

#[test]
fn malformed_blank_and_duplicate_lines_are_counted_and_skipped() {
    let good = |id: &str| serde_json::json!({ "id": id, "text": "One short sentence." }).to_string();
    let input = [
        good("a"),
        String::new(),
        "{not json".into(),
        r#"{"id":"b"}"#.into(),
        r#"{"id":7,"text":"x"}"#.into(),
        good("c"),
        "   ".into(),
        good("a"),
        good("d"),
    ]
    .join("\n");
    let (mut pairs, mut audit) = (Vec::new(), Vec::new());
    let outcome = run_filter(
        input.as_bytes(),
        &mut pairs,
        &mut audit,
        &PipelineConfig::default(),
        &Lexicon::default(),
        &Blocklist::new(),
    )
    .unwrap();
    let m = &outcome.manifest;
    assert_eq!((m.input.records, m.input.malformed, m.input.duplicate_ids), (3, 3, 1));
    assert_eq!(m.decisions_written, 3);
    assert_eq!(m.input.problems.len(), 4);
    assert!(m.input.problems[0].starts_with("line 3:"), "{:?}", m.input.problems);
    assert!(m.input.problems[3].starts_with("line 8: duplicate id"), "{:?}", m.input.problems);
    let ids: Vec<String> = String::from_utf8(audit)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str::<FilterDecision>(l).unwrap().id)
        .collect();
    assert_eq!(ids, ["a", "c", "d"]);
}

#[test]
fn stats_recomputed_from_audit_log() {
    let (input, blocklist) = synthetic_input(5, 800);
    let (mut pairs, mut audit) = (Vec::new(), Vec::new());
    let config = PipelineConfig { worker_count: 2, ..Default::default() };
    let outcome = run_filter(input.as_bytes(), &mut pairs, &mut audit, &config, &Lexicon::default(), &blocklist).unwrap();
    let decisions: Vec<FilterDecision> = String::from_utf8(audit)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();

    let kept: Vec<&FilterDecision> = decisions.iter().filter(|d| d.passed).collect();
    let mut rejections: BTreeMap<String, usize> = BTreeMap::new();
    for d in &decisions {
        for r in &d.reasons {
            *rejections.entry(r.as_str().to_string()).or_default() += 1;
        }
    }
    let mut overlaps: Vec<f64> = kept.iter().map(|d| d.overlap_ratio.unwrap()).collect();
    overlaps.sort_by(f64::total_cmp);
    let lead: usize = kept.iter().map(|d| d.lead_words).sum();
    let rest: usize = kept.iter().map(|d| d.rest_words).sum();

    let s = &outcome.stats;
    assert_eq!(s.article_count, 800);
    assert_eq!(s.passed, kept.len());
    assert_eq!(s.rejected, 800 - kept.len());
    assert_eq!(s.retention_ratio, kept.len() as f64 / 800.0);
    assert_eq!(s.mean_lead_words, Some(lead as f64 / kept.len() as f64));
    assert_eq!(s.mean_rest_words, Some(rest as f64 / kept.len() as f64));
    assert_eq!(s.total_words, (lead + rest) as u64);
    assert_eq!(s.median_overlap, Some(overlaps[(overlaps.len() - 1) / 2]));
    for (reason, n) in &s.rejections {
        assert_eq!(*n, rejections.get(reason).copied().unwrap_or(0), "{reason}");
    }
    assert_eq!(s.rejections.len(), 9);
    assert_eq!(outcome.manifest.pairs_written, kept.len());
}

#[test]
fn pairs_reemitted_from_audit_match_filter_output() {
    let (input, blocklist) = synthetic_input(8, 600);
    let config = PipelineConfig { worker_count: 2, ..Default::default() };
    let (pairs, audit) = filter(&input, &config, &blocklist);
    let mut out = Vec::new();
    let manifest = run_pairs(input.as_bytes(), audit.as_bytes(), &mut out, &config, &Lexicon::default()).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), pairs);
    assert_eq!(manifest.decisions_written, 600);

    // A truncated or reordered audit log is refused.
    let short: String = audit.lines().take(599).map(|l| format!("{l}\n")).collect();
    let err = run_pairs(input.as_bytes(), short.as_bytes(), io::sink(), &config, &Lexicon::default()).unwrap_err();
    assert!(matches!(err, Error::Partial { .. }), "{err}");
    let mut lines: Vec<&str> = audit.lines().collect();
    let first_pass = lines.iter().position(|l| l.contains(r#""passed":true"#)).unwrap();
    lines.swap(first_pass, if first_pass == 0 { 1 } else { 0 });
    let swapped = lines.join("\n");
    let err = run_pairs(input.as_bytes(), swapped.as_bytes(), io::sink(), &config, &Lexicon::default()).unwrap_err();
    assert!(err.to_string().contains("does not belong"), "{err}");
}

#[test]
fn blocklist_rejects_cleaned_duplicates() {
    let line = serde_json::json!({ "id": "golden-1", "text": GOLDEN_TEXT }).to_string();
    // The eval copy carries a different dateline; both clean to the same text.
    let eval = serde_json::json!({ "text": GOLDEN_TEXT.replace("LONDON, England (CNN)", "(Reuters)") }).to_string();
    let (blocklist, summary) = load_blocklist(format!("{eval}\nnot json\n").as_bytes(), &Lexicon::default()).unwrap();
    assert_eq!((summary.records, summary.malformed, blocklist.len()), (1, 1, 1));
    let (pairs, audit) = filter(&line, &golden_config(), &blocklist);
    assert!(pairs.is_empty());
    assert!(audit.contains(r#""reasons":["Duplicate"]"#), "{audit}");
}

#[test]
fn clean_keeps_other_fields() {
    let input = r#"{"id":"x","text":"(CNN) -- Rain fell.","summary":"rain","extra":{"k":[1,2]}}"#;
    let mut out = Vec::new();
    let m = run_clean(input.as_bytes(), &mut out, &Lexicon::default(), 2).unwrap();
    assert_eq!(m.input.records, 1);
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["text"], "Rain fell.");
    assert_eq!(v["summary"], "rain");
    assert_eq!(v["extra"]["k"][1], 2);
}

struct FailAfter(usize);

impl Write for FailAfter {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        if self.0 < buf.len() {
            return Err(io::Error::other("disk full"));
        }
        self.0 -= buf.len();
        Ok(buf.len())
    }

    fn flush(&mut self) -> io::Result<()> {
        Ok(())
    }
}

#[test]
fn write_failure_reports_partial_output() {
    let (input, blocklist) = synthetic_input(9, 3000);
    let err = run_filter(
        input.as_bytes(),
        io::sink(),
        FailAfter(20_000),
        &PipelineConfig::default(),
        &Lexicon::default(),
        &blocklist,
    )
    .unwrap_err();
    let Error::Partial { manifest, source } = &err else {
        panic!("expected partial output error, got {err}");
    };
    assert!(source.to_string().contains("disk full"));
    assert!(manifest.contains("decisions"), "{manifest}");
}
