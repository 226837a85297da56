use super::{check_samples, normalize_for_ngrams, LangidError};
use crate::corpus::Language;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Character trigrams of normalized text, padded with one space on each side.
pub(crate) fn trigrams(text: &str) -> Vec<String> {
    let norm = normalize_for_ngrams(text);
    if norm.is_empty() {
        return Vec::new();
    }
    let chars: Vec<char> = std::iter::once(' ')
        .chain(norm.chars())
        .chain(std::iter::once(' '))
        .collect();
    chars.windows(3).map(|w| w.iter().collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct LanguageTable {
    log_probs: BTreeMap<String, f64>,
    unseen_log_prob: f64,
}

/// Add-one smoothed character trigram model.
///
/// The event space is the union of trigrams seen in training plus one
/// "unseen" bucket, so each language's probabilities sum to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharNgramModel {
    vocabulary_size: usize,
    tables: BTreeMap<Language, LanguageTable>,
}

impl CharNgramModel {
    pub fn train(samples: &BTreeMap<Language, String>) -> Result<Self, LangidError> {
        check_samples(samples)?;
        let mut counts: BTreeMap<Language, HashMap<String, u64>> = BTreeMap::new();
        let mut vocab = BTreeSet::new();
        for (lang, text) in samples {
            let c = counts.entry(*lang).or_default();
            for g in trigrams(text) {
                vocab.insert(g.clone());
                *c.entry(g).or_default() += 1;
            }
        }
        let vocabulary_size = vocab.len() + 1;
        let tables = counts
            .into_iter()
            .map(|(lang, c)| {
                let total: u64 = c.values().sum();
                let denom = (total + vocabulary_size as u64) as f64;
                let log_probs = c.into_iter().map(|(g, n)| (g, ((n + 1) as f64 / denom).ln())).collect();
                (
                    lang,
                    LanguageTable {
                        log_probs,
                        unseen_log_prob: (1.0 / denom).ln(),
                    },
                )
            })
            .collect();
        Ok(Self {
            vocabulary_size,
            tables,
        })
    }

    pub fn languages(&self) -> impl Iterator<Item = Language> + '_ {
        self.tables.keys().copied()
    }

    /// Vocabulary size including the unseen bucket.
    pub fn vocabulary_size(&self) -> usize {
        self.vocabulary_size
    }

    pub fn log_prob(&self, lang: Language, trigram: &str) -> Option<f64> {
        let t = self.tables.get(&lang)?;
        Some(t.log_probs.get(trigram).copied().unwrap_or(t.unseen_log_prob))
    }

    /// Summed trigram log-probabilities per language.
    pub fn scores(&self, text: &str) -> BTreeMap<Language, f64> {
        let grams = trigrams(text);
        self.tables
            .iter()
            .map(|(lang, t)| {
                let s = grams
                    .iter()
                    .map(|g| t.log_probs.get(g).copied().unwrap_or(t.unseen_log_prob))
                    .sum();
                (*lang, s)
            })
            .collect()
    }

    /// Highest-scoring language; ties go to the first language in code order.
    pub fn identify(&self, text: &str) -> Language {
        let mut best: Option<(Language, f64)> = None;
        for (lang, s) in self.scores(text) {
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((lang, s));
            }
        }
        best.map(|(l, _)| l).unwrap_or(Language::Other)
    }

    /// Σ p over the vocabulary (seen and unseen trigrams). Equals one per language.
    pub fn total_probability(&self, lang: Language) -> Option<f64> {
        let t = self.tables.get(&lang)?;
        let seen: f64 = t.log_probs.values().map(|lp| lp.exp()).sum();
        let unseen_slots = self.vocabulary_size - t.log_probs.len();
        Some(seen + unseen_slots as f64 * t.unseen_log_prob.exp())
    }
}
