use std::collections::HashMap;
use std::io::{BufRead, BufWriter, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::record::Summaries;
use super::stream::{stream_records, worker_pool, InputSummary};
use super::PipelineConfig;
use crate::analysis::{
    pairing_ratio, sentence_ratios, BinnedProfile, BucketRecord, DistributionAccumulator, NoveltyAccumulator,
    NoveltyReport, Pairing, ProfileAccumulator, RatioDistribution,
};
use crate::leadbias::SegmentedArticle;
use crate::metrics::{lead_baseline, score_multi_reference, CorpusAccumulator, CorpusScore, LeadPolicy, RougeScore, ScoringPolicy};
use crate::{Error, Lexicon, Result};

/// Every corpus-level report that needs only articles and reference summaries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReports {
    pub input: InputSummary,
    pub profile: BinnedProfile,
    /// One entry per pairing that had at least one defined ratio.
    pub distributions: Vec<RatioDistribution>,
    pub novelty: NoveltyReport,
}

struct ArticleMeasures {
    profile: Option<Vec<(usize, f64)>>,
    ratios: Vec<Option<f64>>,
    novelty: Option<Vec<Option<f64>>>,
}

/// Computes the positional profile, all overlap distributions and novelty in
/// one pass over a JSONL corpus. Records with several summaries are measured
/// against the first.
pub fn analyze_corpus<R: BufRead>(input: R, config: &PipelineConfig, lexicon: &Lexicon) -> Result<CorpusReports> {
    let pool = worker_pool(config.worker_count)?;
    let opts = &config.report;
    let lead_k = config.filter.lead_k;
    let mut profile = ProfileAccumulator::new(opts.profile_bin)?;
    let bins = profile.bins();
    let mut dists = Pairing::ALL
        .iter()
        .map(|&p| DistributionAccumulator::new(p, opts.hist_bin))
        .collect::<Result<Vec<_>>>()?;
    let mut novelty = NoveltyAccumulator::new(opts.novelty_base, opts.novelty_max_n)?;
    let measurer = novelty.clone();
    let mut summary = InputSummary::default();

    stream_records(
        input,
        &pool,
        &mut summary,
        |record| {
            let article = SegmentedArticle::from_raw(record.id, &record.text, lexicon);
            let reference = record.summary.as_ref().and_then(Summaries::first);
            let tokens = reference.map(|s| lexicon.tokenize(s));
            ArticleMeasures {
                profile: tokens.as_deref().map(|t| sentence_ratios(&article, t, bins)),
                ratios: Pairing::ALL
                    .iter()
                    .map(|&p| pairing_ratio(&article, tokens.as_deref(), p, lead_k))
                    .collect(),
                novelty: reference.map(|s| measurer.measure(&lexicon.words(s), &article)),
            }
        },
        |m| {
            match &m.profile {
                Some(r) => profile.add_ratios(r),
                None => profile.skip(),
            }
            for (acc, r) in dists.iter_mut().zip(m.ratios) {
                acc.push(r);
            }
            if let Some(n) = &m.novelty {
                novelty.push(n);
            }
            Ok(())
        },
    )?;

    let distributions = dists.into_iter().filter_map(|d| d.finish().ok()).collect();
    Ok(CorpusReports {
        input: summary,
        profile: profile.finish(),
        distributions,
        novelty: novelty.finish(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineSummary {
    pub id: String,
    pub summary: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineOutcome {
    pub input: InputSummary,
    pub written: usize,
    /// Records with no sentences after cleaning; no summary is written.
    pub empty: usize,
    /// Mean score over records that carry reference summaries.
    pub score: Option<CorpusScore>,
}

/// Writes the lead baseline of every record and, given a scoring policy,
/// scores it against the record's reference summaries.
pub fn run_baseline<R: BufRead, W: Write>(
    input: R,
    output: W,
    lead: LeadPolicy,
    scoring: Option<&ScoringPolicy>,
    lexicon: &Lexicon,
    workers: usize,
) -> Result<BaselineOutcome> {
    let pool = worker_pool(workers)?;
    let mut out = BufWriter::new(output);
    let mut summary = InputSummary::default();
    let mut acc = CorpusAccumulator::new();
    let (mut written, mut empty) = (0, 0);
    stream_records(
        input,
        &pool,
        &mut summary,
        |record| {
            let article = SegmentedArticle::from_raw(record.id, &record.text, lexicon);
            let Ok(text) = lead_baseline(&article, lead) else {
                return Ok(None);
            };
            let score = match (scoring, &record.summary) {
                (Some(policy), Some(refs)) => Some(score_multi_reference(&text, refs.as_slice(), policy, lexicon)?),
                _ => None,
            };
            Ok(Some((BaselineSummary { id: article.id, summary: text }, score)))
        },
        |result: Result<Option<(BaselineSummary, Option<RougeScore>)>>| {
            let Some((line, score)) = result? else {
                empty += 1;
                return Ok(());
            };
            serde_json::to_writer(&mut out, &line)?;
            out.write_all(b"\n")?;
            written += 1;
            if let Some(s) = score {
                acc.push(s);
            }
            Ok(())
        },
    )?;
    out.flush()?;
    let score = match scoring {
        Some(policy) if !acc.is_empty() => Some(acc.finish(policy.report)?),
        _ => None,
    };
    Ok(BaselineOutcome {
        input: summary,
        written,
        empty,
        score,
    })
}

/// One line of a candidate or reference file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRecord {
    pub id: String,
    #[serde(alias = "references", alias = "candidate")]
    pub summary: Summaries,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentScore {
    pub id: String,
    #[serde(flatten)]
    pub score: RougeScore,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub corpus: CorpusScore,
    pub documents: Vec<DocumentScore>,
}

fn read_jsonl<T: for<'de> Deserialize<'de>, R: BufRead>(input: R, what: &str) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let value = serde_json::from_str(&line)
            .map_err(|e| Error::InvalidConfig(format!("{what} line {}: {e}", i + 1)))?;
        out.push(value);
    }
    Ok(out)
}

/// Scores candidate summaries against references joined by id. Both files
/// must cover the same ids; candidates with several entries use the first.
pub fn score_files<C: BufRead, R: BufRead>(
    candidates: C,
    references: R,
    policy: &ScoringPolicy,
    lexicon: &Lexicon,
    workers: usize,
) -> Result<ScoreReport> {
    let candidates: Vec<SummaryRecord> = read_jsonl(candidates, "candidates")?;
    let references: Vec<SummaryRecord> = read_jsonl(references, "references")?;
    let mut by_id: HashMap<&str, &Summaries> = references.iter().map(|r| (r.id.as_str(), &r.summary)).collect();
    let mut joined = Vec::with_capacity(candidates.len());
    let mut unexpected = Vec::new();
    for c in &candidates {
        match by_id.remove(c.id.as_str()) {
            Some(refs) => joined.push((c, refs)),
            None => unexpected.push(c.id.clone()),
        }
    }
    if !unexpected.is_empty() || !by_id.is_empty() {
        let mut missing: Vec<String> = by_id.into_keys().map(str::to_string).collect();
        missing.sort();
        return Err(Error::IdSetMismatch { missing, unexpected });
    }
    let pool = worker_pool(workers)?;
    let documents: Vec<DocumentScore> = pool.install(|| {
        joined
            .par_iter()
            .map(|(c, refs)| {
                let candidate = c.summary.first().unwrap_or("");
                let score = score_multi_reference(candidate, refs.as_slice(), policy, lexicon)?;
                Ok(DocumentScore { id: c.id.clone(), score })
            })
            .collect::<Result<_>>()
    })?;
    let mut acc = CorpusAccumulator::new();
    for d in &documents {
        acc.push(d.score);
    }
    Ok(ScoreReport {
        corpus: acc.finish(policy.report)?,
        documents,
    })
}

/// Reads `{ref_length, score_a, score_b}` lines.
pub fn read_bucket_records<R: BufRead>(input: R) -> Result<Vec<BucketRecord>> {
    read_jsonl(input, "bucket records")
}
