use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Implements `Serialize`/`Deserialize` through the type's string descriptor.
macro_rules! descriptor_serde {
    ($ty:ty) => {
        impl serde::Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> serde::Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let raw = <String as serde::Deserialize>::deserialize(d)?;
                raw.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}
pub(crate) use descriptor_serde;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    #[default]
    R1,
    R2,
    RL,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::R1 => "R1",
            Variant::R2 => "R2",
            Variant::RL => "RL",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "r1" | "rouge1" => Ok(Variant::R1),
            "r2" | "rouge2" => Ok(Variant::R2),
            "rl" | "rougel" => Ok(Variant::RL),
            _ => Err(Error::InvalidPolicy(s.to_string())),
        }
    }
}

/// Which component is the headline number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Report {
    #[default]
    F1,
    Recall,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Report::F1 => "F1",
            Report::Recall => "Recall",
        })
    }
}

impl FromStr for Report {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "f1" | "f" => Ok(Report::F1),
            "recall" | "r" => Ok(Report::Recall),
            _ => Err(Error::InvalidPolicy(s.to_string())),
        }
    }
}

/// How a candidate is shortened before scoring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Truncation {
    #[default]
    None,
    /// Hard cut after this many Unicode characters.
    Chars(usize),
    /// Keep as many candidate tokens as the reference has.
    MatchReferenceTokens,
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truncation::None => f.write_str("none"),
            Truncation::Chars(n) => write!(f, "chars:{n}"),
            Truncation::MatchReferenceTokens => f.write_str("match-reference"),
        }
    }
}

impl FromStr for Truncation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "none" => return Ok(Truncation::None),
            "match-reference" | "match_reference" | "reference" => {
                return Ok(Truncation::MatchReferenceTokens)
            }
            _ => {}
        }
        match lower.strip_prefix("chars:").map(str::parse::<usize>) {
            Some(Ok(n)) if n >= 1 => Ok(Truncation::Chars(n)),
            _ => Err(Error::InvalidPolicy(s.to_string())),
        }
    }
}

/// How per-reference scores are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MultiRef {
    #[default]
    Max,
    Mean,
}

impl fmt::Display for MultiRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MultiRef::Max => "max",
            MultiRef::Mean => "mean",
        })
    }
}

impl FromStr for MultiRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "max" => Ok(MultiRef::Max),
            "mean" | "avg" | "average" => Ok(MultiRef::Mean),
            _ => Err(Error::InvalidPolicy(s.to_string())),
        }
    }
}

descriptor_serde!(Variant);
descriptor_serde!(Report);
descriptor_serde!(Truncation);
descriptor_serde!(MultiRef);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScoringPolicy {
    pub variant: Variant,
    pub report: Report,
    pub truncation: Truncation,
    pub multi_ref: MultiRef,
}

impl ScoringPolicy {
    pub fn new(variant: Variant) -> Self {
        ScoringPolicy {
            variant,
            ..Default::default()
        }
    }

    /// Evaluation convention for a named dataset: recall with reference-length
    /// truncation on NYT, F1 with a 75-character cut on DUC 2003/2004, plain F1
    /// elsewhere.
    pub fn for_dataset(name: &str, variant: Variant) -> Self {
        let (report, truncation) = match name.to_ascii_lowercase().as_str() {
            "nyt" => (Report::Recall, Truncation::MatchReferenceTokens),
            "duc2003" | "duc2004" | "duc" => (Report::F1, Truncation::Chars(75)),
            _ => (Report::F1, Truncation::None),
        };
        ScoringPolicy {
            variant,
            report,
            truncation,
            multi_ref: MultiRef::Max,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_parse() {
        assert_eq!("R1".parse::<Variant>().unwrap(), Variant::R1);
        assert_eq!("rouge-l".parse::<Variant>().unwrap(), Variant::RL);
        assert_eq!("Recall".parse::<Report>().unwrap(), Report::Recall);
        assert_eq!("chars:75".parse::<Truncation>().unwrap(), Truncation::Chars(75));
        assert_eq!("match-reference".parse::<Truncation>().unwrap(), Truncation::MatchReferenceTokens);
        assert_eq!("mean".parse::<MultiRef>().unwrap(), MultiRef::Mean);
        assert!("chars:0".parse::<Truncation>().is_err());
        assert!("chars:x".parse::<Truncation>().is_err());
        assert!("R3".parse::<Variant>().is_err());
    }

    #[test]
    fn json_shape() {
        let p = ScoringPolicy::for_dataset("duc2004", Variant::RL);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"variant":"RL","report":"F1","truncation":"chars:75","multi_ref":"max"}"#);
        assert_eq!(serde_json::from_str::<ScoringPolicy>(&json).unwrap(), p);
        let partial: ScoringPolicy = serde_json::from_str(r#"{"variant":"R2"}"#).unwrap();
        assert_eq!(partial, ScoringPolicy::new(Variant::R2));
        assert!(serde_json::from_str::<ScoringPolicy>(r#"{"variant":"R9"}"#).is_err());
    }

    #[test]
    fn presets() {
        let nyt = ScoringPolicy::for_dataset("NYT", Variant::R1);
        assert_eq!(nyt.report, Report::Recall);
        assert_eq!(nyt.truncation, Truncation::MatchReferenceTokens);
        assert_eq!(ScoringPolicy::for_dataset("xsum", Variant::R1).truncation, Truncation::None);
    }
}
