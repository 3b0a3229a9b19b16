use std::io::{BufRead, BufWriter, Write};

use serde::{Deserialize, Serialize};

use super::stream::{stream_lines, stream_records, worker_pool, InputSummary};
use super::PipelineConfig;
use crate::analysis::{CorpusStats, CorpusStatsBuilder};
use crate::leadbias::{
    dedup_filter, emit_training_pair, filter_article, Blocklist, FilterConfig, FilterDecision, Reason,
    SegmentedArticle, TrainingPair,
};
use crate::{Error, Lexicon, Result};

/// How far a streaming stage got. Reported on success and on failure.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub input: InputSummary,
    pub decisions_written: usize,
    pub pairs_written: usize,
}

impl Manifest {
    fn partial(&self, source: Error) -> Error {
        let manifest = format!(
            "{} records read, {} malformed, {} duplicate ids, {} decisions and {} pairs written",
            self.input.records,
            self.input.malformed,
            self.input.duplicate_ids,
            self.decisions_written,
            self.pairs_written
        );
        Error::Partial {
            manifest,
            source: Box::new(source),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterOutcome {
    pub manifest: Manifest,
    pub stats: CorpusStats,
}

/// Filters and pairs one article. A passed article whose pair cannot be built
/// (only possible under a permissive configuration with no rest) is turned into
/// a `RestTooShort` rejection so that every passed decision has a pair.
pub fn process_article(
    article: &SegmentedArticle,
    config: &FilterConfig,
    blocklist: &Blocklist,
) -> (FilterDecision, Option<TrainingPair>) {
    let mut decision = filter_article(article, config);
    if !dedup_filter(article, blocklist) {
        decision.reject(Reason::Duplicate);
    }
    if !decision.passed {
        return (decision, None);
    }
    match emit_training_pair(article, &decision) {
        Ok(pair) => (decision, Some(pair)),
        Err(_) => {
            decision.reject(Reason::RestTooShort);
            (decision, None)
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Cleans, segments, filters and pairs every record of a JSONL corpus.
///
/// Writes one decision per well-formed record to `audit` and one pair per
/// passed record to `pairs`, both in input order. Output bytes do not depend on
/// `config.worker_count`.
pub fn run_filter<R, P, A>(
    input: R,
    pairs: P,
    audit: A,
    config: &PipelineConfig,
    lexicon: &Lexicon,
    blocklist: &Blocklist,
) -> Result<FilterOutcome>
where
    R: BufRead,
    P: Write,
    A: Write,
{
    let pool = worker_pool(config.worker_count)?;
    let mut pairs = BufWriter::new(pairs);
    let mut audit = BufWriter::new(audit);
    let mut manifest = Manifest::default();
    let mut stats = CorpusStatsBuilder::new();
    let mut decisions_written = 0;
    let mut pairs_written = 0;

    let result = stream_records(
        input,
        &pool,
        &mut manifest.input,
        |record| {
            let article = SegmentedArticle::from_raw(record.id, &record.text, lexicon);
            let (decision, pair) = process_article(&article, &config.filter, blocklist);
            let decision_line = json_line(&decision);
            let pair_line = pair.as_ref().map(json_line);
            (decision, decision_line, pair_line)
        },
        |(decision, decision_line, pair_line)| {
            stats.push(&decision);
            audit.write_all(decision_line.as_bytes())?;
            decisions_written += 1;
            if let Some(line) = pair_line {
                pairs.write_all(line.as_bytes())?;
                pairs_written += 1;
            }
            Ok(())
        },
    )
    .and_then(|()| {
        audit.flush()?;
        pairs.flush()?;
        Ok(())
    });
    manifest.decisions_written = decisions_written;
    manifest.pairs_written = pairs_written;
    match result {
        Ok(()) => Ok(FilterOutcome {
            manifest,
            stats: stats.finish(),
        }),
        Err(e) => Err(manifest.partial(e)),
    }
}

/// Rewrites a JSONL corpus with the prefix block removed from `text`. Every
/// other field is passed through untouched.
pub fn run_clean<R: BufRead, W: Write>(
    input: R,
    output: W,
    lexicon: &Lexicon,
    workers: usize,
) -> Result<Manifest> {
    let pool = worker_pool(workers)?;
    let mut out = BufWriter::new(output);
    let mut manifest = Manifest::default();
    let mut written = 0;
    let result = stream_lines(
        input,
        &pool,
        &mut manifest.input,
        |line| {
            let mut value: serde_json::Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
            let obj = value.as_object_mut().ok_or("record is not a JSON object")?;
            let id = obj
                .get("id")
                .and_then(|v| v.as_str())
                .ok_or("missing string field `id`")?
                .to_string();
            let text = obj
                .get("text")
                .and_then(|v| v.as_str())
                .ok_or("missing string field `text`")?;
            let cleaned = lexicon.clean(text);
            obj.insert("text".into(), serde_json::Value::String(cleaned));
            Ok((id, json_line(&value)))
        },
        |line| {
            out.write_all(line.as_bytes())?;
            written += 1;
            Ok(())
        },
    )
    .and_then(|()| Ok(out.flush()?));
    manifest.decisions_written = written;
    result.map(|()| manifest.clone()).map_err(|e| manifest.partial(e))
}

/// Re-emits training pairs from a corpus and a previously written audit log.
///
/// The audit log must hold exactly one decision per well-formed record, in
/// the same order; the filter is not re-run.
pub fn run_pairs<R, D, W>(
    input: R,
    mut audit: D,
    output: W,
    config: &PipelineConfig,
    lexicon: &Lexicon,
) -> Result<Manifest>
where
    R: BufRead,
    D: BufRead,
    W: Write,
{
    let pool = worker_pool(config.worker_count)?;
    let mut out = BufWriter::new(output);
    let mut manifest = Manifest::default();
    let mut decisions = 0;
    let mut written = 0;
    let mut audit_line = 0usize;
    let mut next_decision = |audit: &mut D| -> Result<Option<FilterDecision>> {
        loop {
            let mut line = String::new();
            if audit.read_line(&mut line)? == 0 {
                return Ok(None);
            }
            audit_line += 1;
            if line.trim().is_empty() {
                continue;
            }
            let mut decision: FilterDecision = serde_json::from_str(&line)
                .map_err(|e| Error::AuditMismatch(format!("line {audit_line}: {e}")))?;
            decision.lead_k = config.filter.lead_k;
            return Ok(Some(decision));
        }
    };
    let result = stream_records(
        input,
        &pool,
        &mut manifest.input,
        |record| SegmentedArticle::from_raw(record.id, &record.text, lexicon),
        |article| {
            let decision = next_decision(&mut audit)?
                .ok_or_else(|| Error::AuditMismatch(format!("no decision for article {:?}", article.id)))?;
            decisions += 1;
            if !decision.passed {
                if decision.id != article.id {
                    return Err(Error::IdMismatch {
                        decision: decision.id,
                        article: article.id,
                    });
                }
                return Ok(());
            }
            let pair = emit_training_pair(&article, &decision)?;
            out.write_all(json_line(&pair).as_bytes())?;
            written += 1;
            Ok(())
        },
    )
    .and_then(|()| match next_decision(&mut audit)? {
        Some(extra) => Err(Error::AuditMismatch(format!(
            "decision for {:?} has no matching article",
            extra.id
        ))),
        None => Ok(out.flush()?),
    });
    manifest.decisions_written = decisions;
    manifest.pairs_written = written;
    result.map(|()| manifest.clone()).map_err(|e| manifest.partial(e))
}

#[derive(Deserialize)]
struct EvalRecord {
    text: String,
}

/// Builds a blocklist from a JSONL file of evaluation articles. Records only
/// need a `text` field; texts are cleaned the same way the corpus is.
/// Malformed lines are counted and skipped.
pub fn load_blocklist<R: BufRead>(input: R, lexicon: &Lexicon) -> Result<(Blocklist, InputSummary)> {
    let mut summary = InputSummary::default();
    let mut blocklist = Blocklist::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<EvalRecord>(&line) {
            Ok(record) => {
                summary.records += 1;
                blocklist.insert_text(&lexicon.clean(&record.text));
            }
            Err(e) => summary.note_malformed(i + 1, e),
        }
    }
    Ok((blocklist, summary))
}
