use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::NoveltyBase;
use crate::leadbias::FilterConfig;
use crate::textproc::Lexicon;
use crate::{Error, Result};

/// Beam-search decoding settings for a downstream dataset. Carried as metadata
/// for whoever trains on the emitted pairs; nothing here decodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecodeParams {
    pub min_length: usize,
    pub max_length: usize,
    pub beam_width: usize,
}

pub fn default_decode_params() -> BTreeMap<String, DecodeParams> {
    let row = |min_length, max_length, beam_width| DecodeParams {
        min_length,
        max_length,
        beam_width,
    };
    BTreeMap::from([
        ("cnn_dailymail".to_string(), row(56, 142, 4)),
        ("nyt".to_string(), row(56, 142, 4)),
        ("xsum".to_string(), row(11, 62, 6)),
        ("duc2003".to_string(), row(6, 26, 1)),
        ("duc2004".to_string(), row(6, 26, 1)),
        ("gigaword".to_string(), row(4, 24, 4)),
    ])
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ResourcePaths {
    pub stopwords: Option<PathBuf>,
    pub prefix_patterns: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IoPaths {
    pub input: Option<PathBuf>,
    pub pairs: Option<PathBuf>,
    pub audit: Option<PathBuf>,
    pub stats: Option<PathBuf>,
    /// JSONL evaluation articles whose fingerprints are removed from the corpus.
    pub blocklist: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReportOptions {
    pub profile_bin: f64,
    pub hist_bin: f64,
    pub novelty_base: NoveltyBase,
    pub novelty_max_n: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            profile_bin: 0.05,
            hist_bin: 0.05,
            novelty_base: NoveltyBase::Lead(3),
            novelty_max_n: 4,
        }
    }
}

/// Everything a pipeline run needs, loadable from a TOML file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub worker_count: usize,
    pub filter: FilterConfig,
    pub resources: ResourcePaths,
    pub io: IoPaths,
    pub report: ReportOptions,
    pub decode: BTreeMap<String, DecodeParams>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            worker_count: std::thread::available_parallelism().map_or(1, |n| n.get()),
            filter: FilterConfig::default(),
            resources: ResourcePaths::default(),
            io: IoPaths::default(),
            report: ReportOptions::default(),
            decode: default_decode_params(),
        }
    }
}

/// Environment variables that override the configured io paths.
pub const ENV_OVERRIDES: [&str; 5] = [
    "LEADKIT_INPUT",
    "LEADKIT_PAIRS",
    "LEADKIT_AUDIT",
    "LEADKIT_STATS",
    "LEADKIT_BLOCKLIST",
];

impl PipelineConfig {
    pub fn from_toml(source: &str) -> Result<Self> {
        let config: PipelineConfig = toml::from_str(source)?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let source = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        PipelineConfig::from_toml(&source)
    }

    pub fn validate(&self) -> Result<()> {
        if self.worker_count == 0 {
            return Err(Error::InvalidConfig("worker_count must be at least 1".into()));
        }
        if self.report.novelty_max_n == 0 {
            return Err(Error::InvalidConfig("novelty_max_n must be at least 1".into()));
        }
        self.filter.validate()
    }

    /// Applies `LEADKIT_*` io overrides read through `lookup`.
    pub fn apply_env_with(&mut self, lookup: impl Fn(&str) -> Option<String>) {
        let slots: [&mut Option<PathBuf>; 5] = [
            &mut self.io.input,
            &mut self.io.pairs,
            &mut self.io.audit,
            &mut self.io.stats,
            &mut self.io.blocklist,
        ];
        for (name, slot) in ENV_OVERRIDES.iter().zip(slots) {
            if let Some(value) = lookup(name).filter(|v| !v.is_empty()) {
                *slot = Some(PathBuf::from(value));
            }
        }
    }

    pub fn apply_env(&mut self) {
        self.apply_env_with(|name| std::env::var(name).ok());
    }

    pub fn lexicon(&self) -> Result<Lexicon> {
        Lexicon::load(
            self.resources.stopwords.as_deref(),
            self.resources.prefix_patterns.as_deref(),
        )
    }
}
