use serde::{Deserialize, Serialize};

/// One or several reference summaries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Summaries {
    One(String),
    Many(Vec<String>),
}

impl Summaries {
    pub fn as_slice(&self) -> &[String] {
        match self {
            Summaries::One(s) => std::slice::from_ref(s),
            Summaries::Many(v) => v,
        }
    }

    pub fn first(&self) -> Option<&str> {
        self.as_slice().first().map(String::as_str)
    }
}

/// One line of an input corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRecord {
    pub id: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summaries>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
}
