use super::{normalize_url, DiffError};
use crate::corpus::Document;
use crate::dedup::{find_near_duplicates, MinHashSignature, MinHasher, NearDuplicate};
use serde::Serialize;
use std::collections::BTreeSet;

/// Percentages of A's URLs found in B and of B's URLs found in A.
pub fn url_overlap<'a, I, J>(urls_a: I, urls_b: J) -> Result<(f64, f64), DiffError>
where
    I: IntoIterator<Item = &'a str>,
    J: IntoIterator<Item = &'a str>,
{
    let a: BTreeSet<&str> = urls_a.into_iter().collect();
    let b: BTreeSet<&str> = urls_b.into_iter().collect();
    if a.is_empty() {
        return Err(DiffError::EmptyUrlSet("A"));
    }
    if b.is_empty() {
        return Err(DiffError::EmptyUrlSet("B"));
    }
    let shared = a.intersection(&b).count() as f64;
    Ok((100.0 * shared / a.len() as f64, 100.0 * shared / b.len() as f64))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapReport {
    pub n_a: usize,
    pub n_b: usize,
    pub shared_pairs: usize,
    pub unique_in_a_pct: f64,
    pub unique_in_b_pct: f64,
    pub url_overlap_a_pct: f64,
    pub url_overlap_b_pct: f64,
    pub merged_total: usize,
    #[serde(skip)]
    pub pairs: Vec<NearDuplicate>,
}

/// Signatures of every document long enough to shingle.
pub fn signatures_for(docs: &[Document], hasher: &MinHasher) -> Vec<(String, MinHashSignature)> {
    docs.iter()
        .filter_map(|d| hasher.sign(&d.text()).ok().map(|s| (d.id.clone(), s)))
        .collect()
}

/// Overlap from precomputed signatures. Documents without a signature count
/// as unique to their side.
pub fn text_overlap_from_signatures(
    sigs_a: &[(String, MinHashSignature)],
    sigs_b: &[(String, MinHashSignature)],
    n_a: usize,
    n_b: usize,
    url_pcts: (f64, f64),
    threshold: f64,
) -> Result<OverlapReport, DiffError> {
    if n_a == 0 {
        return Err(DiffError::EmptyCorpus("A"));
    }
    if n_b == 0 {
        return Err(DiffError::EmptyCorpus("B"));
    }
    let pairs = find_near_duplicates(sigs_a, sigs_b, threshold)?;
    // one-to-one matching: matched_A = matched_B = number of pairs
    let matched = pairs.len();
    Ok(OverlapReport {
        n_a,
        n_b,
        shared_pairs: matched,
        unique_in_a_pct: 100.0 * (n_a - matched) as f64 / n_a as f64,
        unique_in_b_pct: 100.0 * (n_b - matched) as f64 / n_b as f64,
        url_overlap_a_pct: url_pcts.0,
        url_overlap_b_pct: url_pcts.1,
        merged_total: n_b + (n_a - matched),
        pairs,
    })
}

pub fn text_overlap(
    a: &[Document],
    b: &[Document],
    threshold: f64,
    hasher: &MinHasher,
) -> Result<OverlapReport, DiffError> {
    if a.is_empty() {
        return Err(DiffError::EmptyCorpus("A"));
    }
    if b.is_empty() {
        return Err(DiffError::EmptyCorpus("B"));
    }
    let norm =
        |docs: &[Document]| -> Result<Vec<String>, DiffError> { docs.iter().map(|d| normalize_url(&d.url)).collect() };
    let (ua, ub) = (norm(a)?, norm(b)?);
    let url_pcts = url_overlap(ua.iter().map(String::as_str), ub.iter().map(String::as_str))?;
    text_overlap_from_signatures(
        &signatures_for(a, hasher),
        &signatures_for(b, hasher),
        a.len(),
        b.len(),
        url_pcts,
        threshold,
    )
}
