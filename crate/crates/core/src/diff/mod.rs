//! Comparison of two corpus versions: URL and text overlap, size change,
//! label distributions and per-domain reports.

mod distribution;
mod domains;
mod overlap;
mod url_norm;
mod versions;

pub use distribution::{
    distribution_change, distribution_report, CorpusDistribution, DistributionReport, FREQUENCY_FLOOR,
};
pub use domains::{cumulative_share, domain_report, DomainRow, SAMPLE_IDS, TOP_DOMAINS};
pub use overlap::{signatures_for, text_overlap, text_overlap_from_signatures, url_overlap, OverlapReport};
pub use url_norm::normalize_url;
pub use versions::{compare_versions, normalized_urls, write_report, PairComparison, VersionComparison};

use crate::dedup::DedupError;
use crate::stats::StatsError;

#[derive(Debug, thiserror::Error)]
pub enum DiffError {
    #[error("cannot parse URL `{url}`: {message}")]
    BadUrl { url: String, message: String },
    #[error("URL set {0} is empty")]
    EmptyUrlSet(&'static str),
    #[error("corpus {0} is empty")]
    EmptyCorpus(&'static str),
    #[error("corpus `{0}` has no labeled documents")]
    NoLabeled(String),
    #[error(transparent)]
    Dedup(#[from] DedupError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
