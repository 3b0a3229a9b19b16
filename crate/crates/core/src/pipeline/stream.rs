use std::collections::HashSet;
use std::io::BufRead;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CorpusRecord;
use crate::Result;

const CHUNK_LINES: usize = 512;
const CHUNK_BYTES: usize = 8 << 20;
const MAX_SAMPLES: usize = 20;

/// What the reader saw, independent of what the stages did with it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    /// Well-formed records handed to the sink.
    pub records: usize,
    /// Lines that failed to parse or lacked required fields.
    pub malformed: usize,
    /// Well-formed records whose id had already been seen in this run.
    pub duplicate_ids: usize,
    /// The first few problems, as `"line N: message"`.
    pub problems: Vec<String>,
}

impl InputSummary {
    fn note(&mut self, line: usize, message: impl std::fmt::Display) {
        if self.problems.len() < MAX_SAMPLES {
            self.problems.push(format!("line {line}: {message}"));
        }
    }

    pub(crate) fn note_malformed(&mut self, line: usize, message: impl std::fmt::Display) {
        self.malformed += 1;
        self.note(line, message);
    }
}

pub(crate) fn worker_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| std::io::Error::other(e).into())
}

/// Reads `input` in bounded chunks, runs `parse` on each non-blank line on the
/// worker pool, then feeds results to `sink` one at a time in input order.
///
/// `parse` returns the record id with its payload, or a message for a
/// malformed line. Records repeating an earlier id are skipped. At most one
/// chunk is resident at a time.
pub(crate) fn stream_lines<R, T, P, S>(
    mut input: R,
    pool: &rayon::ThreadPool,
    summary: &mut InputSummary,
    parse: P,
    mut sink: S,
) -> Result<()>
where
    R: BufRead,
    T: Send,
    P: Fn(&str) -> std::result::Result<(String, T), String> + Sync,
    S: FnMut(T) -> Result<()>,
{
    let mut seen: HashSet<String> = HashSet::new();
    let mut line_no = 0usize;
    let mut chunk: Vec<(usize, String)> = Vec::with_capacity(CHUNK_LINES);
    let mut eof = false;
    while !eof {
        chunk.clear();
        let mut bytes = 0;
        while chunk.len() < CHUNK_LINES && bytes < CHUNK_BYTES {
            let mut line = String::new();
            if input.read_line(&mut line)? == 0 {
                eof = true;
                break;
            }
            line_no += 1;
            if line.trim().is_empty() {
                continue;
            }
            bytes += line.len();
            chunk.push((line_no, line));
        }
        let results: Vec<std::result::Result<(String, T), String>> =
            pool.install(|| chunk.par_iter().map(|(_, line)| parse(line)).collect());
        for ((line, _), result) in chunk.iter().zip(results) {
            match result {
                Err(message) => summary.note_malformed(*line, message),
                Ok((id, _)) if seen.contains(&id) => {
                    summary.duplicate_ids += 1;
                    summary.note(*line, format!("duplicate id {id:?}"));
                }
                Ok((id, payload)) => {
                    seen.insert(id);
                    summary.records += 1;
                    sink(payload)?;
                }
            }
        }
    }
    Ok(())
}

/// [`stream_lines`] over [`CorpusRecord`] lines.
pub(crate) fn stream_records<R, T, M, S>(
    input: R,
    pool: &rayon::ThreadPool,
    summary: &mut InputSummary,
    map: M,
    sink: S,
) -> Result<()>
where
    R: BufRead,
    T: Send,
    M: Fn(CorpusRecord) -> T + Sync,
    S: FnMut(T) -> Result<()>,
{
    stream_lines(
        input,
        pool,
        summary,
        |line| {
            let record: CorpusRecord = serde_json::from_str(line).map_err(|e| e.to_string())?;
            Ok((record.id.clone(), map(record)))
        },
        sink,
    )
}
