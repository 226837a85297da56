use chrono::{DateTime, Utc};
use forge_core::diff::{domain_report, DomainRow};
use forge_core::refine::{RemovalEntry, RemovalList, Verdict};
use forge_core::Document;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::{Mutex, RwLock};

use crate::log::{replay, ActiveVerdicts, LoggedVerdict, VerdictLog};
use crate::ReviewError;

pub const DEFAULT_TOP: usize = forge_core::diff::TOP_DOMAINS;
pub const DEFAULT_SAMPLES: usize = forge_core::diff::SAMPLE_IDS;
pub const SAMPLE_CHARS: usize = 1500;

/// A loaded corpus with its full domain ranking.
#[derive(Debug)]
pub struct Corpus {
    pub id: String,
    docs: Vec<Document>,
    ranking: Vec<DomainRow>,
    /// Document indices per domain, ordered by id.
    by_domain: BTreeMap<String, Vec<usize>>,
    total_words: usize,
}

impl Corpus {
    pub fn new(id: impl Into<String>, docs: Vec<Document>) -> Self {
        let ranking = domain_report(&docs, usize::MAX);
        let mut by_domain: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (i, d) in docs.iter().enumerate() {
            by_domain.entry(d.domain.clone()).or_default().push(i);
        }
        for idx in by_domain.values_mut() {
            idx.sort_by(|&a, &b| docs[a].id.cmp(&docs[b].id));
        }
        let total_words = docs.iter().map(|d| d.word_count).sum();
        Self {
            id: id.into(),
            docs,
            ranking,
            by_domain,
            total_words,
        }
    }

    pub fn texts(&self) -> usize {
        self.docs.len()
    }

    pub fn words(&self) -> usize {
        self.total_words
    }

    pub fn has_domain(&self, domain: &str) -> bool {
        self.by_domain.contains_key(domain)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusInfo {
    pub id: String,
    pub texts: usize,
    pub words: usize,
    pub domains: usize,
    pub reviewed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainStatusRow {
    pub rank: usize,
    pub domain: String,
    pub texts: usize,
    pub words: usize,
    pub share_pct: f64,
    /// `unreviewed` or the active verdict.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reviewer: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub id: String,
    pub url: String,
    pub text: String,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegradationSummary {
    pub corpus_id: String,
    pub top_n: usize,
    pub n_bad_domains: usize,
    pub bad_texts_pct: f64,
    pub bad_words_pct: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictAck {
    pub domain: String,
    pub verdict: Verdict,
    pub active_verdicts: usize,
}

/// First `max_chars` characters, cut back to the last whitespace when the
/// text is longer. A single over-long word is cut hard.
pub fn truncate_at_whitespace(text: &str, max_chars: usize) -> (String, bool) {
    let Some((cut, _)) = text.char_indices().nth(max_chars) else {
        return (text.to_string(), false);
    };
    let next_is_space = text[cut..].starts_with(char::is_whitespace);
    let head = &text[..cut];
    let end = if next_is_space {
        head.len()
    } else {
        head.rfind(char::is_whitespace).unwrap_or(head.len())
    };
    (head[..end].trim_end().to_string(), true)
}

type Clock = Box<dyn Fn() -> DateTime<Utc> + Send + Sync>;

/// Shared service state: read-only corpora, a single-writer verdict log and
/// the active verdicts replayed from it.
pub struct ReviewState {
    corpora: BTreeMap<String, Corpus>,
    active: RwLock<ActiveVerdicts>,
    log: Mutex<VerdictLog>,
    clock: Clock,
}

impl std::fmt::Debug for ReviewState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ReviewState")
            .field("corpora", &self.corpora.keys().collect::<Vec<_>>())
            .finish_non_exhaustive()
    }
}

impl ReviewState {
    /// Load corpora and replay the verdict log.
    pub fn new(corpora: Vec<Corpus>, log: VerdictLog, records: &[LoggedVerdict]) -> Result<Self, ReviewError> {
        let mut map = BTreeMap::new();
        for c in corpora {
            if map.contains_key(&c.id) {
                return Err(ReviewError::DuplicateCorpus(c.id));
            }
            map.insert(c.id.clone(), c);
        }
        Ok(Self {
            corpora: map,
            active: RwLock::new(replay(records)),
            log: Mutex::new(log),
            clock: Box::new(Utc::now),
        })
    }

    pub fn with_clock(mut self, clock: impl Fn() -> DateTime<Utc> + Send + Sync + 'static) -> Self {
        self.clock = Box::new(clock);
        self
    }

    fn corpus(&self, id: &str) -> Result<&Corpus, ReviewError> {
        self.corpora
            .get(id)
            .ok_or_else(|| ReviewError::UnknownCorpus(id.to_string()))
    }

    fn active_for(&self, id: &str) -> BTreeMap<String, RemovalEntry> {
        self.active
            .read()
            .expect("verdict lock poisoned")
            .get(id)
            .cloned()
            .unwrap_or_default()
    }

    pub fn active_verdicts(&self) -> ActiveVerdicts {
        self.active.read().expect("verdict lock poisoned").clone()
    }

    pub fn corpora(&self) -> Vec<CorpusInfo> {
        self.corpora
            .values()
            .map(|c| {
                let active = self.active_for(&c.id);
                CorpusInfo {
                    id: c.id.clone(),
                    texts: c.texts(),
                    words: c.words(),
                    domains: c.ranking.len(),
                    reviewed: active.keys().filter(|d| c.has_domain(d)).count(),
                }
            })
            .collect()
    }

    /// Top domains joined with their verdicts: unreviewed first, then by rank.
    pub fn list_domains(&self, id: &str, top_n: usize) -> Result<Vec<DomainStatusRow>, ReviewError> {
        let corpus = self.corpus(id)?;
        let active = self.active_for(id);
        let mut rows: Vec<DomainStatusRow> = corpus
            .ranking
            .iter()
            .take(top_n)
            .enumerate()
            .map(|(i, r)| {
                let v = active.get(&r.domain);
                DomainStatusRow {
                    rank: i + 1,
                    domain: r.domain.clone(),
                    texts: r.texts,
                    words: r.words,
                    share_pct: r.share_pct,
                    status: v.map_or("unreviewed", |e| e.verdict.as_str()).to_string(),
                    reason: v.map(|e| e.reason.clone()),
                    reviewer: v.map(|e| e.reviewer.clone()),
                }
            })
            .collect();
        rows.sort_by_key(|r| (r.status != "unreviewed", r.rank));
        Ok(rows)
    }

    /// The `n` lowest-id documents of a domain, each cut to its first
    /// [`SAMPLE_CHARS`] characters.
    pub fn samples(&self, id: &str, domain: &str, n: usize) -> Result<Vec<Sample>, ReviewError> {
        let corpus = self.corpus(id)?;
        let idx = corpus
            .by_domain
            .get(domain)
            .ok_or_else(|| ReviewError::UnknownDomain(domain.to_string()))?;
        Ok(idx
            .iter()
            .take(n)
            .map(|&i| {
                let d = &corpus.docs[i];
                let (text, truncated) = truncate_at_whitespace(&d.text(), SAMPLE_CHARS);
                Sample {
                    id: d.id.clone(),
                    url: d.url.clone(),
                    text,
                    truncated,
                }
            })
            .collect())
    }

    /// Validate, log durably, then activate a verdict.
    pub fn record_verdict(
        &self,
        id: &str,
        domain: &str,
        verdict: &str,
        reason: &str,
        reviewer: &str,
    ) -> Result<VerdictAck, ReviewError> {
        let corpus = self.corpus(id)?;
        let verdict: Verdict = verdict
            .parse()
            .map_err(|_| ReviewError::InvalidVerdict(verdict.to_string()))?;
        let domain = domain.trim().to_lowercase();
        if domain.is_empty() {
            return Err(ReviewError::EmptyDomain);
        }
        if !corpus.has_domain(&domain) {
            return Err(ReviewError::UnknownDomain(domain));
        }
        let record = LoggedVerdict {
            corpus: id.to_string(),
            domain: domain.clone(),
            verdict,
            reason: reason.to_string(),
            reviewer: reviewer.to_string(),
            time: (self.clock)(),
        };
        let mut log = self.log.lock().expect("log lock poisoned");
        log.append(&record)?;
        let mut active = self.active.write().expect("verdict lock poisoned");
        let per_corpus = active.entry(id.to_string()).or_default();
        per_corpus.insert(domain.clone(), record.entry());
        Ok(VerdictAck {
            domain,
            verdict,
            active_verdicts: per_corpus.len(),
        })
    }

    /// Removal list of every domain whose active verdict is not `good`.
    pub fn removal_list(&self, id: &str) -> Result<RemovalList, ReviewError> {
        self.corpus(id)?;
        let entries = self
            .active_for(id)
            .into_values()
            .filter(|e| e.verdict.is_bad())
            .collect();
        Ok(RemovalList { entries })
    }

    /// Share of all texts and words that sit on bad domains ranked within `top_n`.
    pub fn degradation(&self, id: &str, top_n: usize) -> Result<DegradationSummary, ReviewError> {
        let corpus = self.corpus(id)?;
        let active = self.active_for(id);
        let (mut n_bad, mut texts, mut words) = (0, 0, 0);
        for r in corpus.ranking.iter().take(top_n) {
            if active.get(&r.domain).is_some_and(|e| e.verdict.is_bad()) {
                n_bad += 1;
                texts += r.texts;
                words += r.words;
            }
        }
        let pct = |part: usize, whole: usize| {
            if whole == 0 {
                0.0
            } else {
                100.0 * part as f64 / whole as f64
            }
        };
        Ok(DegradationSummary {
            corpus_id: id.to_string(),
            top_n,
            n_bad_domains: n_bad,
            bad_texts_pct: pct(texts, corpus.texts()),
            bad_words_pct: pct(words, corpus.words()),
        })
    }
}
