use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("n-gram order must be at least 1")]
    ZeroOrder,
    #[error("article has no sentences")]
    EmptyArticle,
    #[error("article {id:?} did not pass the filter; no training pair can be emitted")]
    NotPassed { id: String },
    #[error("decision {decision:?} does not belong to article {article:?}")]
    IdMismatch { decision: String, article: String },
    #[error("decision ids do not match article ids: {} missing, {} unexpected", missing.len(), unexpected.len())]
    IdSetMismatch {
        missing: Vec<String>,
        unexpected: Vec<String>,
    },
    #[error("at least one reference summary is required")]
    NoReferences,
    #[error("{0}: empty input")]
    EmptyInput(&'static str),
    #[error("at least {needed} records are required, got {got}")]
    TooFewRecords { needed: usize, got: usize },
    #[error("bin width {0} must lie in (0, 1] and divide 1 evenly")]
    InvalidBinWidth(f64),
    #[error("invalid policy {0:?}")]
    InvalidPolicy(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid prefix pattern on line {line}: {source}")]
    Pattern {
        line: usize,
        #[source]
        source: regex::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("audit log does not line up with the corpus: {0}")]
    AuditMismatch(String),
    /// A stage failed after writing some output; `manifest` says how much.
    #[error("{source} (partial output: {manifest})")]
    Partial {
        manifest: String,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Stream(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
