//! Domain triage service: ranks the most productive web domains of a corpus,
//! shows sample texts, records curator verdicts in an append-only log and
//! exports the resulting removal list.

mod api;
mod log;
mod state;

pub use api::{router, router_with_ui, serve};
pub use log::{read_log, replay, ActiveVerdicts, LoggedVerdict, VerdictLog};
pub use state::{
    truncate_at_whitespace, Corpus, CorpusInfo, DegradationSummary, DomainStatusRow, ReviewState, Sample, VerdictAck,
    DEFAULT_SAMPLES, DEFAULT_TOP, SAMPLE_CHARS,
};

use forge_core::refine::Verdict;

#[derive(Debug, thiserror::Error)]
pub enum ReviewError {
    #[error("unknown corpus `{0}`")]
    UnknownCorpus(String),
    #[error("unknown domain `{0}`")]
    UnknownDomain(String),
    #[error("corpus id `{0}` given twice")]
    DuplicateCorpus(String),
    #[error("invalid verdict `{0}`")]
    InvalidVerdict(String),
    #[error("domain must not be empty")]
    EmptyDomain,
    #[error("verdict log line {line}: {source}")]
    Log {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Allowed verdict strings, in display order.
pub fn allowed_verdicts() -> Vec<&'static str> {
    Verdict::ALL.iter().map(|v| v.as_str()).collect()
}
