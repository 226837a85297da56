use super::{check_samples, normalize_for_ngrams, LangidError};
use crate::corpus::Language;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

pub const PROFILE_SIZE: usize = 300;

/// Top-`limit` character 1–4-grams by frequency, ties broken by the n-gram.
/// Words are padded with `_` on both sides.
pub(crate) fn profile(text: &str, limit: usize) -> Vec<String> {
    let mut counts: HashMap<String, u64> = HashMap::new();
    for word in normalize_for_ngrams(text).split(' ').filter(|w| !w.is_empty()) {
        let chars: Vec<char> = std::iter::once('_')
            .chain(word.chars())
            .chain(std::iter::once('_'))
            .collect();
        for n in 1..=4 {
            for w in chars.windows(n) {
                if n == 1 && w[0] == '_' {
                    continue;
                }
                *counts.entry(w.iter().collect()).or_default() += 1;
            }
        }
    }
    let mut ranked: Vec<(String, u64)> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.into_iter().take(limit).map(|(g, _)| g).collect()
}

/// Rank-order n-gram profile classifier (out-of-place distance).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankProfileModel {
    profiles: BTreeMap<Language, Vec<String>>,
}

impl RankProfileModel {
    pub fn train(samples: &BTreeMap<Language, String>) -> Result<Self, LangidError> {
        check_samples(samples)?;
        Ok(Self {
            profiles: samples.iter().map(|(l, t)| (*l, profile(t, PROFILE_SIZE))).collect(),
        })
    }

    pub fn profile_of(&self, lang: Language) -> Option<&[String]> {
        self.profiles.get(&lang).map(Vec::as_slice)
    }

    /// Out-of-place distance from `text` to each language profile. Missing
    /// n-grams cost the maximum displacement.
    pub fn distances(&self, text: &str) -> BTreeMap<Language, usize> {
        let doc = profile(text, PROFILE_SIZE);
        self.profiles
            .iter()
            .map(|(lang, prof)| {
                let index: HashMap<&str, usize> = prof.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
                let d = doc
                    .iter()
                    .enumerate()
                    .map(|(i, g)| match index.get(g.as_str()) {
                        Some(j) => i.abs_diff(*j),
                        None => PROFILE_SIZE,
                    })
                    .sum();
                (*lang, d)
            })
            .collect()
    }

    /// Closest language; ties go to the first in code order.
    pub fn identify(&self, text: &str) -> Language {
        let mut best: Option<(Language, usize)> = None;
        for (lang, d) in self.distances(text) {
            if best.is_none_or(|(_, b)| d < b) {
                best = Some((lang, d));
            }
        }
        best.map(|(l, _)| l).unwrap_or(Language::Other)
    }
}
