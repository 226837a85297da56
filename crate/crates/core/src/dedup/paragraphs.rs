use super::{mask_paragraph, MaskedFingerprint};
use crate::corpus::Document;
use crate::hash::stable_hash_str;
use std::collections::HashSet;

/// A document is dropped once this share of its retained paragraphs turned
/// out to be duplicates.
pub const DROP_FRACTION: f64 = 0.5;

/// Streaming exact-duplicate filter on the retained full text.
#[derive(Debug, Default)]
pub struct ExactDedup {
    seen: HashSet<u64>,
}

impl ExactDedup {
    pub fn new() -> Self {
        Self::default()
    }

    /// True the first time a full text is seen.
    pub fn admit(&mut self, doc: &Document) -> bool {
        self.seen.insert(stable_hash_str(&doc.text(), 0))
    }
}

pub fn dedup_exact(docs: impl IntoIterator<Item = Document>) -> Vec<Document> {
    let mut f = ExactDedup::new();
    docs.into_iter().filter(|d| f.admit(d)).collect()
}

/// Streaming paragraph-level near-duplicate filter. The seen-set spans every
/// document passed through it.
#[derive(Debug, Default)]
pub struct ParagraphDedup {
    seen: HashSet<MaskedFingerprint>,
    pub paragraphs_removed: usize,
    pub documents_dropped: usize,
}

impl ParagraphDedup {
    pub fn new() -> Self {
        Self::default()
    }

    /// Un-retain already seen paragraphs; `None` if the document has to go.
    pub fn process(&mut self, mut doc: Document) -> Option<Document> {
        let mut retained = 0usize;
        let mut removed = 0usize;
        for p in doc.paragraphs.iter_mut().filter(|p| p.retained) {
            let masked = mask_paragraph(&p.text);
            if masked.is_empty() {
                continue;
            }
            retained += 1;
            if !self.seen.insert(MaskedFingerprint::of_masked(&masked)) {
                p.retained = false;
                removed += 1;
            }
        }
        self.paragraphs_removed += removed;
        if retained > 0 && removed as f64 / retained as f64 >= DROP_FRACTION {
            self.documents_dropped += 1;
            return None;
        }
        doc.refresh_word_count();
        Some(doc)
    }
}

pub fn dedup_paragraphs(docs: impl IntoIterator<Item = Document>) -> Vec<Document> {
    let mut f = ParagraphDedup::new();
    docs.into_iter().filter_map(|d| f.process(d)).collect()
}
