//! Core corpus data types, JSONL streaming, VERT export and manifests.

mod jsonl;
mod manifest;
pub mod tokenize;
mod vert;

pub use jsonl::{read_documents, write_document, write_documents, DocumentReader};
pub use manifest::{build_manifest, CorpusManifest, DomainCount};
pub use vert::{export_vert, TokenAnnotation};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("duplicate document id `{0}`")]
    DuplicateId(String),
    #[error("document `{0}` has no retained paragraphs")]
    NothingToExport(String),
    #[error("annotation rows ({annotations}) do not match token count ({tokens})")]
    AnnotationMismatch { tokens: usize, annotations: usize },
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("unknown language code `{0}`")]
    UnknownLanguage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Corpus language codes.
///
/// `Hbs` labels the Bosnian/Croatian/Montenegrin/Serbian macro-language inside
/// the identification models; routed documents always carry a concrete code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    Bs,
    Bg,
    Hr,
    Mk,
    Cnr,
    Sr,
    Sl,
    Hbs,
    Other,
}

impl Language {
    pub const CORPORA: [Language; 7] = [
        Language::Bs,
        Language::Bg,
        Language::Hr,
        Language::Mk,
        Language::Cnr,
        Language::Sr,
        Language::Sl,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Language::Bs => "bs",
            Language::Bg => "bg",
            Language::Hr => "hr",
            Language::Mk => "mk",
            Language::Cnr => "cnr",
            Language::Sr => "sr",
            Language::Sl => "sl",
            Language::Hbs => "hbs",
            Language::Other => "other",
        }
    }

    /// Member of the HBS macro-language (or the macro label itself).
    pub fn is_hbs(self) -> bool {
        matches!(
            self,
            Language::Bs | Language::Hr | Language::Cnr | Language::Sr | Language::Hbs
        )
    }

    /// The label a general-purpose identifier would use for this language.
    pub fn macro_language(self) -> Language {
        if self.is_hbs() {
            Language::Hbs
        } else {
            self
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Language {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "bs" => Language::Bs,
            "bg" => Language::Bg,
            "hr" => Language::Hr,
            "mk" => Language::Mk,
            "cnr" => Language::Cnr,
            "sr" => Language::Sr,
            "sl" => Language::Sl,
            "hbs" => Language::Hbs,
            "other" => Language::Other,
            _ => return Err(CorpusError::UnknownLanguage(s.to_string())),
        })
    }
}

/// Boilerplate class of a paragraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quality {
    Good,
    NearGood,
    Bad,
    Short,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Paragraph {
    pub text: String,
    pub char_count: usize,
    pub quality: Quality,
    pub retained: bool,
    pub link_density: f64,
    pub stopword_density: f64,
}

impl Paragraph {
    pub fn new(text: impl Into<String>, quality: Quality, retained: bool) -> Self {
        let text = text.into();
        Self {
            char_count: text.chars().count(),
            text,
            quality,
            retained,
            link_density: 0.0,
            stopword_density: 0.0,
        }
    }

    /// Number of whitespace-delimited words.
    pub fn word_count(&self) -> usize {
        self.text.split_whitespace().count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Schema {
    Genre,
    Topic,
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Schema::Genre => "genre",
            Schema::Topic => "topic",
        })
    }
}

pub const MIX_LABEL: &str = "Mix";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelAssignment {
    pub label: String,
    pub probability: f64,
    pub schema: Schema,
}

impl LabelAssignment {
    pub fn is_mix(&self) -> bool {
        self.label == MIX_LABEL
    }
}

/// One web text.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub id: String,
    pub url: String,
    pub domain: String,
    pub tld: String,
    pub crawl_time: DateTime<Utc>,
    pub paragraphs: Vec<Paragraph>,
    pub language: Language,
    pub genre: Option<LabelAssignment>,
    pub topic: Option<LabelAssignment>,
    pub word_count: usize,
}

impl Document {
    pub fn retained_paragraphs(&self) -> impl Iterator<Item = &Paragraph> {
        self.paragraphs.iter().filter(|p| p.retained)
    }

    /// Retained paragraph texts joined by newlines.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for p in self.retained_paragraphs() {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&p.text);
        }
        out
    }

    pub fn computed_word_count(&self) -> usize {
        self.retained_paragraphs().map(Paragraph::word_count).sum()
    }

    /// Re-derive `word_count` after paragraph retention changes.
    pub fn refresh_word_count(&mut self) {
        self.word_count = self.computed_word_count();
    }
}

/// Lowercased host with any leading `www.` removed.
pub fn host_of(url: &url::Url) -> Option<String> {
    let host = url.host_str()?.trim_end_matches('.').to_lowercase();
    Some(host.strip_prefix("www.").unwrap_or(&host).to_string())
}

/// Final dot-separated label of a host.
pub fn tld_of_host(host: &str) -> &str {
    host.rsplit('.').next().unwrap_or(host)
}

/// Registrable domain approximated as the last two host labels.
pub fn registrable_domain(host: &str) -> String {
    let labels: Vec<&str> = host.split('.').filter(|l| !l.is_empty()).collect();
    if labels.len() <= 2 {
        labels.join(".")
    } else {
        labels[labels.len() - 2..].join(".")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn language_codes_round_trip() {
        for lang in Language::CORPORA.iter().chain([Language::Hbs, Language::Other].iter()) {
            assert_eq!(lang.code().parse::<Language>().unwrap(), *lang);
        }
        assert!("xx".parse::<Language>().is_err());
        assert_eq!(Language::Cnr.macro_language(), Language::Hbs);
        assert_eq!(Language::Sl.macro_language(), Language::Sl);
    }

    #[test]
    fn domain_helpers() {
        let u = url::Url::parse("https://WWW.news.Example.si/a").unwrap();
        let host = host_of(&u).unwrap();
        assert_eq!(host, "news.example.si");
        assert_eq!(tld_of_host(&host), "si");
        assert_eq!(registrable_domain(&host), "example.si");
        assert_eq!(registrable_domain("x.si"), "x.si");
    }
}
