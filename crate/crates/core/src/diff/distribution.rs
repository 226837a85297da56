use super::DiffError;
use crate::corpus::{Document, Schema};
use crate::stats::percent_change;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Labels at or above this percentage in any corpus are "frequent".
pub const FREQUENCY_FLOOR: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusDistribution {
    pub corpus: String,
    pub n_labeled: usize,
    pub percentages: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionReport {
    pub schema: Schema,
    pub restrict_to_genre: Option<String>,
    pub corpora: Vec<CorpusDistribution>,
    pub frequent: Vec<String>,
}

/// Label percentages per corpus. With `restrict_to_genre`, only documents
/// whose genre label equals it are counted (the usual setting for topics).
pub fn distribution_report(
    corpora: &[(&str, &[Document])],
    schema: Schema,
    restrict_to_genre: Option<&str>,
    frequency_floor: f64,
) -> Result<DistributionReport, DiffError> {
    let mut out = Vec::new();
    for (name, docs) in corpora {
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for d in docs.iter() {
            if let Some(g) = restrict_to_genre {
                if d.genre.as_ref().map(|a| a.label.as_str()) != Some(g) {
                    continue;
                }
            }
            let label = match schema {
                Schema::Genre => d.genre.as_ref(),
                Schema::Topic => d.topic.as_ref(),
            };
            if let Some(a) = label {
                *counts.entry(a.label.clone()).or_default() += 1;
            }
        }
        let n: usize = counts.values().sum();
        if n == 0 {
            return Err(DiffError::NoLabeled(name.to_string()));
        }
        out.push(CorpusDistribution {
            corpus: name.to_string(),
            n_labeled: n,
            percentages: counts
                .into_iter()
                .map(|(l, c)| (l, 100.0 * c as f64 / n as f64))
                .collect(),
        });
    }
    let frequent: BTreeSet<String> = out
        .iter()
        .flat_map(|c| c.percentages.iter())
        .filter(|(_, p)| **p >= frequency_floor)
        .map(|(l, _)| l.clone())
        .collect();
    Ok(DistributionReport {
        schema,
        restrict_to_genre: restrict_to_genre.map(String::from),
        corpora: out,
        frequent: frequent.into_iter().collect(),
    })
}

/// Percent change of each label's share from `old` to `new`. Labels absent
/// from `old` have no baseline and are left out.
pub fn distribution_change(old: &CorpusDistribution, new: &CorpusDistribution) -> BTreeMap<String, f64> {
    old.percentages
        .iter()
        .filter_map(|(l, p)| {
            let q = new.percentages.get(l).copied().unwrap_or(0.0);
            percent_change(*p, q).ok().map(|c| (l.clone(), c))
        })
        .collect()
}
