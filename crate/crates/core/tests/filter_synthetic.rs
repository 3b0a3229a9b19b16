use leadkit::leadbias::{dedup_filter, filter_article, Blocklist, FilterConfig, Reason, SegmentedArticle};
use leadkit::pipeline::{process_article, run_filter, PipelineConfig};
use leadkit::Lexicon;
use leadkit_testkit::synth::Generator;

fn names(reasons: &[Reason]) -> Vec<&'static str> {
    reasons.iter().map(|r| r.as_str()).collect()
}

#[test]
fn decisions_match_generator_ground_truth() {
    let lex = Lexicon::default();
    let config = FilterConfig::default();
    let (articles, blocked) = Generator::new(11).corpus(3000);
    let blocklist: Blocklist = blocked.iter().collect();
    for a in &articles {
        let seg = SegmentedArticle::from_raw(a.id.clone(), &a.text, &lex);
        assert_eq!(seg.sentence_count(), a.sentences.len(), "{}", a.text);
        let mut d = filter_article(&seg, &config);
        if !dedup_filter(&seg, &blocklist) {
            d.reject(Reason::Duplicate);
        }
        assert_eq!(names(&d.reasons), a.expected, "{}: {}", a.id, a.text);
        assert_eq!(d.passed, a.passes());
        assert_eq!((d.lead_words, d.rest_words), (a.lead_words, a.rest_words));
        assert_eq!(d.overlap_ratio, a.overlap);
    }
}

#[test]
fn pipeline_agrees_with_direct_calls() {
    let lex = Lexicon::default();
    let config = PipelineConfig { worker_count: 3, ..Default::default() };
    let (articles, blocked) = Generator::new(12).corpus(500);
    let blocklist: Blocklist = blocked.iter().collect();
    let input: String = articles.iter().map(|a| a.json() + "\n").collect();
    let (mut pairs, mut audit) = (Vec::new(), Vec::new());
    let outcome = run_filter(input.as_bytes(), &mut pairs, &mut audit, &config, &lex, &blocklist).unwrap();

    let audit = String::from_utf8(audit).unwrap();
    let lines: Vec<&str> = audit.lines().collect();
    assert_eq!(lines.len(), articles.len());
    let pair_lines = String::from_utf8(pairs).unwrap();
    let mut pair_iter = pair_lines.lines();
    for (a, line) in articles.iter().zip(&lines) {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["id"], a.id.as_str());
        let got: Vec<&str> = v["reasons"].as_array().unwrap().iter().map(|r| r.as_str().unwrap()).collect();
        assert_eq!(got, a.expected);
        let seg = SegmentedArticle::from_raw(a.id.clone(), &a.text, &lex);
        let (_, pair) = process_article(&seg, &config.filter, &blocklist);
        if a.passes() {
            let p: serde_json::Value = serde_json::from_str(pair_iter.next().unwrap()).unwrap();
            assert_eq!(p["id"], a.id.as_str());
            assert_eq!(p["target"], a.lead_text(3).as_str());
            assert_eq!(p["source"], a.rest_text(3).as_str());
            assert_eq!(p, serde_json::to_value(pair.unwrap()).unwrap());
        } else {
            assert!(pair.is_none());
        }
    }
    assert!(pair_iter.next().is_none());
    let passed = articles.iter().filter(|a| a.passes()).count();
    assert_eq!(outcome.manifest.pairs_written, passed);
    assert_eq!(outcome.stats.passed, passed);
    assert_eq!(outcome.stats.article_count, articles.len());
}
