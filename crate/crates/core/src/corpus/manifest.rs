use super::{CorpusError, Document, Language};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainCount {
    pub texts: u64,
    pub words: u64,
}

/// Corpus size summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub corpus_id: String,
    /// Shared language of all documents, or `other` when mixed or empty.
    pub language: Language,
    pub n_texts: u64,
    pub n_words: u64,
    pub n_domains: u64,
    pub domain_counts: BTreeMap<String, DomainCount>,
}

impl CorpusManifest {
    pub fn empty(corpus_id: impl Into<String>) -> Self {
        Self {
            corpus_id: corpus_id.into(),
            language: Language::Other,
            n_texts: 0,
            n_words: 0,
            n_domains: 0,
            domain_counts: BTreeMap::new(),
        }
    }

    /// Associative merge of two manifests over disjoint documents.
    pub fn merge(mut self, other: &CorpusManifest) -> Self {
        self.language = match (self.n_texts, other.n_texts) {
            (0, _) => other.language,
            (_, 0) => self.language,
            _ if self.language == other.language => self.language,
            _ => Language::Other,
        };
        self.n_texts += other.n_texts;
        self.n_words += other.n_words;
        for (domain, c) in &other.domain_counts {
            let e = self.domain_counts.entry(domain.clone()).or_default();
            e.texts += c.texts;
            e.words += c.words;
        }
        self.n_domains = self.domain_counts.len() as u64;
        self
    }
}

pub fn build_manifest<'a>(
    corpus_id: &str,
    documents: impl IntoIterator<Item = &'a Document>,
) -> Result<CorpusManifest, CorpusError> {
    let mut m = CorpusManifest::empty(corpus_id);
    let mut seen = HashSet::new();
    let mut language: Option<Language> = None;
    for doc in documents {
        if !seen.insert(doc.id.as_str()) {
            return Err(CorpusError::DuplicateId(doc.id.clone()));
        }
        language = match language {
            None => Some(doc.language),
            Some(l) if l == doc.language => Some(l),
            Some(_) => Some(Language::Other),
        };
        m.n_texts += 1;
        m.n_words += doc.word_count as u64;
        let e = m.domain_counts.entry(doc.domain.clone()).or_default();
        e.texts += 1;
        e.words += doc.word_count as u64;
    }
    m.language = language.unwrap_or(Language::Other);
    m.n_domains = m.domain_counts.len() as u64;
    Ok(m)
}
