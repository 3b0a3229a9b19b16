use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use leadkit::analysis::{
    corpus_stats, length_bucket_delta, CorpusStatsBuilder, CsvReport, Pairing,
};
use leadkit::leadbias::{Blocklist, FilterDecision};
use leadkit::metrics::{LeadPolicy, ScoringPolicy, Variant};
use leadkit::pipeline::{
    analyze_corpus, load_blocklist, read_bucket_records, run_baseline, run_clean, run_filter,
    run_pairs, score_files, InputSummary, PipelineConfig,
};
use leadkit::Lexicon;
use serde::Serialize;
use serde_json::json;

use crate::args::*;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(leadkit::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}\n\nFor more information, try '--help'."),
            CliError::Data(e) => {
                write!(f, "{e}")?;
                let mut source = std::error::Error::source(e);
                while let Some(s) = source {
                    // Io and Partial already include their source in the message.
                    if !e.to_string().contains(&s.to_string()) {
                        write!(f, ": {s}")?;
                    }
                    source = s.source();
                }
                Ok(())
            }
        }
    }
}

impl From<leadkit::Error> for CliError {
    fn from(e: leadkit::Error) -> Self {
        CliError::Data(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Data(e.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Data(e.into())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn io_error(path: &Path, source: io::Error) -> CliError {
    CliError::Data(leadkit::Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| io_error(path, e))
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| io_error(path, e))
}

fn required<'a>(
    flag: Option<&'a PathBuf>,
    config: Option<&'a PathBuf>,
    name: &str,
) -> Result<&'a Path> {
    flag.or(config).map(PathBuf::as_path).ok_or_else(|| {
        usage(format!(
            "missing {name}: pass it as a flag or set it in the config file"
        ))
    })
}

fn note_input(summary: &InputSummary) {
    if summary.malformed == 0 && summary.duplicate_ids == 0 {
        return;
    }
    eprintln!(
        "note: skipped {} malformed line(s) and {} duplicate id(s)",
        summary.malformed, summary.duplicate_ids
    );
    for p in &summary.problems {
        eprintln!("  {p}");
    }
}

fn sink(out: &OutputArgs) -> Result<Box<dyn Write>> {
    Ok(match &out.path {
        Some(p) => Box::new(BufWriter::new(create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

/// Writes `value` as pretty JSON. Reports without a tabular form refuse CSV.
fn emit_json<T: Serialize>(out: &OutputArgs, value: &T) -> Result<()> {
    if out.format == Format::Csv {
        return Err(usage("this report has no CSV form; use --format json"));
    }
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

/// Writes a report as pretty JSON or as CSV rows.
fn emit_report<R: Serialize + CsvReport>(out: &OutputArgs, report: &R) -> Result<()> {
    match out.format {
        Format::Json => emit_json(out, report),
        Format::Csv => {
            let mut w = sink(out)?;
            report.write_csv(&mut w)?;
            w.flush()?;
            Ok(())
        }
    }
}

fn load_config(cli: &Cli) -> Result<PipelineConfig> {
    let mut config = match &cli.config {
        Some(path) => PipelineConfig::from_file(path)?,
        None => PipelineConfig::default(),
    };
    config.apply_env();
    if let Some(w) = cli.workers {
        config.worker_count = w;
    }
    config.validate().map_err(|e| usage(e.to_string()))?;
    Ok(config)
}

pub fn run(cli: Cli) -> Result<()> {
    let mut config = load_config(&cli)?;
    let lexicon = config.lexicon()?;
    match cli.command {
        Command::Clean(a) => clean(&a, &config, &lexicon),
        Command::Filter(a) => {
            if let Some(k) = a.lead_k {
                config.filter.lead_k = k;
            }
            if let Some(t) = a.overlap_threshold {
                config.filter.overlap_threshold = t;
            }
            if let Some(n) = a.min_sentences {
                config.filter.min_sentences = n;
            }
            config.validate().map_err(|e| usage(e.to_string()))?;
            filter(&a, &config, &lexicon)
        }
        Command::Pairs(a) => pairs(&a, &config, &lexicon),
        Command::Stats(a) => stats(&a, &config),
        Command::Rouge(a) => rouge(&a, &config, &lexicon),
        Command::Novelty(a) => {
            if let Some(b) = a.base {
                config.report.novelty_base = b;
            }
            if let Some(n) = a.max_n {
                config.report.novelty_max_n = n;
            }
            config.validate().map_err(|e| usage(e.to_string()))?;
            let input = required(
                a.input.as_ref(),
                config.io.input.as_ref(),
                "input corpus (--in)",
            )?;
            let reports = analyze_corpus(open(input)?, &config, &lexicon)?;
            note_input(&reports.input);
            emit_report(&a.output, &reports.novelty)
        }
        Command::Profile(a) => {
            if let Some(b) = a.bin {
                config.report.profile_bin = b;
            }
            let input = required(
                a.input.as_ref(),
                config.io.input.as_ref(),
                "input corpus (--in)",
            )?;
            let reports = analyze_corpus(open(input)?, &config, &lexicon)?;
            note_input(&reports.input);
            emit_report(&a.output, &reports.profile)
        }
        Command::Overlap(a) => overlap(&a, config, &lexicon),
        Command::Buckets(a) => {
            let records = read_bucket_records(open(&a.input)?)?;
            let report = length_bucket_delta(records)?;
            emit_report(&a.output, &report)
        }
        Command::Baseline(a) => baseline(&a, &config, &lexicon),
        Command::Serve(a) => serve(&a, config, lexicon),
    }
}

fn clean(a: &CleanArgs, config: &PipelineConfig, lexicon: &Lexicon) -> Result<()> {
    let input = required(
        a.input.as_ref(),
        config.io.input.as_ref(),
        "input corpus (--in)",
    )?;
    let manifest = run_clean(
        open(input)?,
        create(&a.output)?,
        lexicon,
        config.worker_count,
    )?;
    note_input(&manifest.input);
    eprintln!(
        "cleaned {} records into {}",
        manifest.decisions_written,
        a.output.display()
    );
    Ok(())
}

fn filter(a: &FilterArgs, config: &PipelineConfig, lexicon: &Lexicon) -> Result<()> {
    let io = &config.io;
    let input = required(a.input.as_ref(), io.input.as_ref(), "input corpus (--in)")?;
    let pairs_path = required(a.pairs.as_ref(), io.pairs.as_ref(), "pairs output (--out)")?;
    let audit_path = required(
        a.audit.as_ref(),
        io.audit.as_ref(),
        "decision log (--audit)",
    )?;
    let stats_path = a.stats.as_ref().or(io.stats.as_ref());

    let blocklist = match a.blocklist.as_ref().or(io.blocklist.as_ref()) {
        Some(p) => {
            let (list, summary) = load_blocklist(open(p)?, lexicon)?;
            note_input(&summary);
            list
        }
        None => Blocklist::new(),
    };
    let reader = open(input)?;
    let outcome = run_filter(
        reader,
        create(pairs_path)?,
        create(audit_path)?,
        config,
        lexicon,
        &blocklist,
    )?;
    note_input(&outcome.manifest.input);
    if let Some(p) = stats_path {
        let report = json!({
            "stats": outcome.stats,
            "manifest": outcome.manifest,
            "filter": config.filter,
            "decode": config.decode,
        });
        let mut w = BufWriter::new(create(p)?);
        serde_json::to_writer_pretty(&mut w, &report)?;
        w.write_all(b"\n")?;
        w.flush().map_err(|e| io_error(p, e))?;
    }
    eprintln!(
        "{} of {} articles passed ({:.1}%), {} pairs written",
        outcome.stats.passed,
        outcome.stats.article_count,
        outcome.stats.retention_ratio * 100.0,
        outcome.manifest.pairs_written
    );
    Ok(())
}

fn pairs(a: &PairsArgs, config: &PipelineConfig, lexicon: &Lexicon) -> Result<()> {
    let io = &config.io;
    let input = required(a.input.as_ref(), io.input.as_ref(), "input corpus (--in)")?;
    let audit = required(
        a.audit.as_ref(),
        io.audit.as_ref(),
        "decision log (--audit)",
    )?;
    let out = required(a.pairs.as_ref(), io.pairs.as_ref(), "pairs output (--out)")?;
    let manifest = run_pairs(open(input)?, open(audit)?, create(out)?, config, lexicon)?;
    note_input(&manifest.input);
    eprintln!("{} pairs written", manifest.pairs_written);
    Ok(())
}

fn read_decisions(path: &Path) -> Result<Vec<FilterDecision>> {
    let mut out = Vec::new();
    for (i, line) in open(path)?.lines().enumerate() {
        let line = line.map_err(|e| io_error(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let d = serde_json::from_str(&line).map_err(|e| {
            CliError::Data(leadkit::Error::AuditMismatch(format!(
                "{} line {}: {e}",
                path.display(),
                i + 1
            )))
        })?;
        out.push(d);
    }
    Ok(out)
}

#[derive(serde::Deserialize)]
struct IdOnly {
    id: String,
    #[allow(dead_code)]
    text: String,
}

fn stats(a: &StatsArgs, config: &PipelineConfig) -> Result<()> {
    let audit = required(
        a.audit.as_ref(),
        config.io.audit.as_ref(),
        "decision log (--audit)",
    )?;
    let decisions = read_decisions(audit)?;
    let stats = match a.input.as_ref() {
        Some(input) => {
            // Same acceptance rules as the filter: malformed lines and
            // repeated ids never produced a decision.
            let mut ids = Vec::new();
            let mut seen = HashSet::new();
            for line in open(input)?.lines() {
                let line = line.map_err(|e| io_error(input, e))?;
                if let Ok(r) = serde_json::from_str::<IdOnly>(&line) {
                    if seen.insert(r.id.clone()) {
                        ids.push(r.id);
                    }
                }
            }
            corpus_stats(&decisions, ids.iter().map(String::as_str))?
        }
        None => {
            let mut b = CorpusStatsBuilder::new();
            for d in &decisions {
                b.push(d);
            }
            b.finish()
        }
    };
    emit_json(&a.output, &stats)
}

fn scoring_policy(a: &RougeArgs) -> ScoringPolicy {
    let variant = a.variant.unwrap_or_default();
    let mut p = match &a.dataset {
        Some(d) => ScoringPolicy::for_dataset(d, variant),
        None => ScoringPolicy::new(variant),
    };
    if let Some(r) = a.report {
        p.report = r;
    }
    if let Some(t) = a.truncation {
        p.truncation = t;
    }
    if let Some(m) = a.multi_ref {
        p.multi_ref = m;
    }
    p
}

fn rouge(a: &RougeArgs, config: &PipelineConfig, lexicon: &Lexicon) -> Result<()> {
    let policy = scoring_policy(a);
    let report = score_files(
        open(&a.candidates)?,
        open(&a.references)?,
        &policy,
        lexicon,
        config.worker_count,
    )?;
    if let Some(p) = &a.per_doc {
        let mut w = BufWriter::new(create(p)?);
        for d in &report.documents {
            serde_json::to_writer(&mut w, d)?;
            w.write_all(b"\n")?;
        }
        w.flush().map_err(|e| io_error(p, e))?;
    }
    emit_json(
        &a.output,
        &json!({ "policy": policy, "score": report.corpus }),
    )
}

fn overlap(a: &OverlapArgs, mut config: PipelineConfig, lexicon: &Lexicon) -> Result<()> {
    if let Some(b) = a.bin {
        config.report.hist_bin = b;
    }
    let input = required(
        a.input.as_ref(),
        config.io.input.as_ref(),
        "input corpus (--in)",
    )?;
    let reports = analyze_corpus(open(input)?, &config, lexicon)?;
    note_input(&reports.input);
    let mut dists = reports.distributions;
    if let Some(p) = a.pairing {
        dists.retain(|d| d.label == p);
        if dists.is_empty() {
            return Err(CliError::Data(leadkit::Error::EmptyInput(match p {
                Pairing::Lead3VsRest => "lead vs rest overlap",
                _ => "summary overlap (no record has a summary)",
            })));
        }
    }
    emit_report(&a.output, &dists)
}

fn baseline(a: &BaselineArgs, config: &PipelineConfig, lexicon: &Lexicon) -> Result<()> {
    let input = required(
        a.input.as_ref(),
        config.io.input.as_ref(),
        "input corpus (--in)",
    )?;
    let policy = a
        .policy
        .or_else(|| a.dataset.as_deref().map(LeadPolicy::for_dataset))
        .unwrap_or_default();
    let scoring = |v: Variant| match &a.dataset {
        Some(d) => ScoringPolicy::for_dataset(d, v),
        None => ScoringPolicy::new(v),
    };
    let first = a.score.first().map(|&v| scoring(v));
    let outcome = run_baseline(
        open(input)?,
        create(&a.output)?,
        policy,
        first.as_ref(),
        lexicon,
        config.worker_count,
    )?;
    note_input(&outcome.input);
    let mut scores = serde_json::Map::new();
    if let (Some(v), Some(s)) = (a.score.first(), outcome.score) {
        scores.insert(v.to_string(), serde_json::to_value(s)?);
    }
    for &v in a.score.iter().skip(1) {
        let o = run_baseline(
            open(input)?,
            io::sink(),
            policy,
            Some(&scoring(v)),
            lexicon,
            config.worker_count,
        )?;
        if let Some(s) = o.score {
            scores.insert(v.to_string(), serde_json::to_value(s)?);
        }
    }
    let decode = a
        .dataset
        .as_ref()
        .and_then(|d| config.decode.get(&d.to_ascii_lowercase()));
    let report = json!({
        "policy": policy,
        "written": outcome.written,
        "empty": outcome.empty,
        "scores": scores,
        "decode": decode,
    });
    serde_json::to_writer_pretty(io::stdout().lock(), &report)?;
    println!();
    Ok(())
}

fn serve(a: &ServeArgs, config: PipelineConfig, lexicon: Lexicon) -> Result<()> {
    let addr = std::net::SocketAddr::new(a.host, a.port);
    let state = leadkit_service::AppState::new(lexicon, config.decode);
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .worker_threads(config.worker_count)
        .enable_all()
        .build()?;
    eprintln!("listening on http://{addr}");
    runtime.block_on(leadkit_service::serve(addr, state))?;
    Ok(())
}
