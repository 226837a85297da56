use super::{domain_report, normalize_url, text_overlap, url_overlap, DiffError, OverlapReport};
use crate::corpus::Document;
use crate::dedup::MinHasher;
use crate::stats::{
    fit_weighted_line, normalize_weights, pearson_with_p, percent_change, predict_overlap, CorrelationResult,
    RegressionModel,
};
use serde_json::json;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

/// One corpus present in both versions.
#[derive(Debug, Clone, PartialEq)]
pub struct PairComparison {
    pub corpus: String,
    pub overlap: OverlapReport,
    pub texts_change_pct: f64,
    pub words_change_pct: f64,
    /// Share of B's domains also present in A, and vice versa.
    pub domain_overlap_a_pct: f64,
    pub domain_overlap_b_pct: f64,
    /// Text overlap of B predicted from its URL overlap with the published model.
    pub predicted_overlap_pct: f64,
    pub predicted_clamped: bool,
}

impl PairComparison {
    /// Share of B's texts with a near-duplicate in A.
    pub fn shared_in_b_pct(&self) -> f64 {
        100.0 - self.overlap.unique_in_b_pct
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VersionComparison {
    pub pairs: Vec<PairComparison>,
    /// Shared-text share of B regressed on its URL overlap, weighted by B's
    /// normalized size. Absent when the pairs cannot support a fit.
    pub regression: Option<RegressionModel<f64>>,
    pub correlation: Option<CorrelationResult<f64>>,
}

/// Compare each `(name, version A docs, version B docs)` triple.
pub fn compare_versions(
    corpora: &[(String, Vec<Document>, Vec<Document>)],
    threshold: f64,
    hasher: &MinHasher,
) -> Result<VersionComparison, DiffError> {
    let mut pairs = Vec::new();
    for (name, a, b) in corpora {
        let overlap = text_overlap(a, b, threshold, hasher)?;
        let words = |docs: &[Document]| docs.iter().map(|d| d.word_count as f64).sum::<f64>();
        let domains = |docs: &[Document]| {
            domain_report(docs, usize::MAX)
                .into_iter()
                .map(|r| r.domain)
                .collect::<Vec<_>>()
        };
        let (da, db) = (domains(a), domains(b));
        let (dom_a, dom_b) = url_overlap(da.iter().map(String::as_str), db.iter().map(String::as_str))?;
        let predicted = predict_overlap(overlap.url_overlap_b_pct, None);
        pairs.push(PairComparison {
            corpus: name.clone(),
            texts_change_pct: percent_change(a.len() as f64, b.len() as f64)?,
            words_change_pct: percent_change(words(a), words(b)).unwrap_or(f64::NAN),
            domain_overlap_a_pct: dom_a,
            domain_overlap_b_pct: dom_b,
            predicted_overlap_pct: predicted.value,
            predicted_clamped: predicted.clamped,
            overlap,
        });
    }
    let points: Vec<(f64, f64)> = pairs
        .iter()
        .map(|p| (p.overlap.url_overlap_b_pct, p.shared_in_b_pct()))
        .collect();
    let sizes: Vec<f64> = pairs.iter().map(|p| p.overlap.n_b as f64).collect();
    let regression = normalize_weights(&sizes)
        .and_then(|w| fit_weighted_line(&points, &w))
        .ok();
    let correlation = pearson_with_p(&points).ok();
    Ok(VersionComparison {
        pairs,
        regression,
        correlation,
    })
}

/// Canonical URLs of a corpus, in document order.
pub fn normalized_urls(docs: &[Document]) -> Result<Vec<String>, DiffError> {
    docs.iter().map(|d| normalize_url(&d.url)).collect()
}

/// Write `overlap.tsv`, `pairs.tsv` and `summary.json` into `dir`.
pub fn write_report(dir: &Path, cmp: &VersionComparison) -> Result<(), DiffError> {
    fs::create_dir_all(dir)?;
    let mut tsv = String::from(
        "corpus\tn_a\tn_b\tshared_pairs\tunique_in_a_pct\tunique_in_b_pct\turl_overlap_a_pct\turl_overlap_b_pct\tmerged_total\ttexts_change_pct\twords_change_pct\tdomain_overlap_a_pct\tdomain_overlap_b_pct\tpredicted_overlap_pct\n",
    );
    let mut pairs_tsv = String::from("corpus\tid_a\tid_b\testimate\n");
    for p in &cmp.pairs {
        let o = &p.overlap;
        writeln!(
            tsv,
            "{}\t{}\t{}\t{}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\t{}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\t{:.4}",
            p.corpus,
            o.n_a,
            o.n_b,
            o.shared_pairs,
            o.unique_in_a_pct,
            o.unique_in_b_pct,
            o.url_overlap_a_pct,
            o.url_overlap_b_pct,
            o.merged_total,
            p.texts_change_pct,
            p.words_change_pct,
            p.domain_overlap_a_pct,
            p.domain_overlap_b_pct,
            p.predicted_overlap_pct
        )
        .expect("writing to String");
        for m in &o.pairs {
            writeln!(pairs_tsv, "{}\t{}\t{}\t{:.6}", p.corpus, m.id_a, m.id_b, m.estimate).expect("writing to String");
        }
    }
    fs::write(dir.join("overlap.tsv"), tsv)?;
    fs::write(dir.join("pairs.tsv"), pairs_tsv)?;
    let summary = json!({
        "corpora": cmp.pairs.iter().map(|p| json!({
            "corpus": p.corpus,
            "overlap": p.overlap,
            "texts_change_pct": p.texts_change_pct,
            "words_change_pct": p.words_change_pct,
            "domain_overlap_a_pct": p.domain_overlap_a_pct,
            "domain_overlap_b_pct": p.domain_overlap_b_pct,
            "predicted_overlap_pct": p.predicted_overlap_pct,
            "predicted_clamped": p.predicted_clamped,
        })).collect::<Vec<_>>(),
        "regression": cmp.regression.as_ref().map(|m| json!({"intercept": m.intercept, "slope": m.slope, "weights": m.weights})),
        "correlation": cmp.correlation.as_ref().map(|c| json!({"r": c.r, "n": c.n, "p": c.p})),
    });
    fs::write(
        dir.join("summary.json"),
        serde_json::to_string_pretty(&summary).expect("JSON values serialize") + "\n",
    )?;
    Ok(())
}
