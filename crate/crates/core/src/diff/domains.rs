use crate::corpus::Document;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

pub const TOP_DOMAINS: usize = 250;
pub const SAMPLE_IDS: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainRow {
    pub domain: String,
    pub texts: usize,
    pub words: usize,
    pub share_pct: f64,
    /// Lowest document ids of the domain.
    pub sample_ids: Vec<String>,
}

/// The `top_n` largest domains by text count, ties broken by name.
pub fn domain_report<'a>(docs: impl IntoIterator<Item = &'a Document>, top_n: usize) -> Vec<DomainRow> {
    struct Acc<'a> {
        texts: usize,
        words: usize,
        ids: BTreeSet<&'a str>,
    }
    let mut by_domain: BTreeMap<&str, Acc> = BTreeMap::new();
    let mut total = 0usize;
    for d in docs {
        total += 1;
        let acc = by_domain.entry(d.domain.as_str()).or_insert(Acc {
            texts: 0,
            words: 0,
            ids: BTreeSet::new(),
        });
        acc.texts += 1;
        acc.words += d.word_count;
        acc.ids.insert(d.id.as_str());
    }
    let mut rows: Vec<DomainRow> = by_domain
        .into_iter()
        .map(|(domain, acc)| DomainRow {
            domain: domain.to_string(),
            texts: acc.texts,
            words: acc.words,
            share_pct: 100.0 * acc.texts as f64 / total as f64,
            sample_ids: acc.ids.iter().take(SAMPLE_IDS).map(|s| s.to_string()).collect(),
        })
        .collect();
    rows.sort_by(|a, b| b.texts.cmp(&a.texts).then_with(|| a.domain.cmp(&b.domain)));
    rows.truncate(top_n);
    rows
}

/// Summed share of the listed domains.
pub fn cumulative_share<'a>(rows: &[DomainRow], domains: impl IntoIterator<Item = &'a str>) -> f64 {
    let set: BTreeSet<&str> = domains.into_iter().collect();
    rows.iter()
        .filter(|r| set.contains(r.domain.as_str()))
        .map(|r| r.share_pct)
        .sum()
}
