use crate::corpus::Document;
use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

pub const REMOVAL_HEADER: &str = "domain\tverdict\treason\treviewer\ttime";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Good,
    MachineTranslated,
    Generated,
    EncodingBroken,
}

impl Verdict {
    pub const ALL: [Verdict; 4] = [
        Verdict::Good,
        Verdict::MachineTranslated,
        Verdict::Generated,
        Verdict::EncodingBroken,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Good => "good",
            Verdict::MachineTranslated => "machine_translated",
            Verdict::Generated => "generated",
            Verdict::EncodingBroken => "encoding_broken",
        }
    }

    pub fn is_bad(self) -> bool {
        self != Verdict::Good
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = RemovalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Verdict::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| RemovalError::UnknownVerdict(s.to_string()))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RemovalError {
    #[error("unknown verdict `{0}` (allowed: good, machine_translated, generated, encoding_broken)")]
    UnknownVerdict(String),
    #[error("removal list line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovalEntry {
    pub domain: String,
    pub verdict: Verdict,
    pub reason: String,
    pub reviewer: String,
    pub time: DateTime<Utc>,
}

fn clean_field(s: &str) -> String {
    s.split(['\t', '\n', '\r']).collect::<Vec<_>>().join(" ")
}

/// Curated per-domain verdicts, in file order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RemovalList {
    pub entries: Vec<RemovalEntry>,
}

impl RemovalList {
    pub fn parse<R: BufRead>(reader: R) -> Result<Self, RemovalError> {
        let mut entries = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line_no = i + 1;
            if line.trim().is_empty() || (i == 0 && line.starts_with("domain\t")) {
                continue;
            }
            let err = |message: String| RemovalError::Malformed { line: line_no, message };
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 5 {
                return Err(err(format!("expected 5 TAB-separated fields, found {}", fields.len())));
            }
            let verdict = fields[1].parse().map_err(|e: RemovalError| err(e.to_string()))?;
            let time = DateTime::parse_from_rfc3339(fields[4])
                .map_err(|e| err(format!("bad time `{}`: {e}", fields[4])))?
                .with_timezone(&Utc);
            entries.push(RemovalEntry {
                domain: fields[0].trim().to_lowercase(),
                verdict,
                reason: fields[2].to_string(),
                reviewer: fields[3].to_string(),
                time,
            });
        }
        Ok(Self { entries })
    }

    /// TSV with header. TABs and newlines inside free-text fields become spaces.
    pub fn write<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{REMOVAL_HEADER}")?;
        for e in &self.entries {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                clean_field(&e.domain),
                e.verdict,
                clean_field(&e.reason),
                clean_field(&e.reviewer),
                e.time.to_rfc3339_opts(SecondsFormat::Secs, true)
            )?;
        }
        Ok(())
    }

    pub fn to_tsv(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("fields are UTF-8")
    }

    /// Domains carrying at least one non-good verdict.
    pub fn bad_domains(&self) -> BTreeSet<&str> {
        self.entries
            .iter()
            .filter(|e| e.verdict.is_bad())
            .map(|e| e.domain.as_str())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalRow {
    pub domain: String,
    pub verdict: Verdict,
    pub dropped: usize,
}

/// One row per domain in the list, including domains absent from the corpus.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RemovalReport {
    pub rows: Vec<RemovalRow>,
}

impl RemovalReport {
    pub fn total_dropped(&self) -> usize {
        self.rows.iter().map(|r| r.dropped).sum()
    }
}

pub fn apply_removal_list(
    docs: impl IntoIterator<Item = Document>,
    list: &RemovalList,
) -> (Vec<Document>, RemovalReport) {
    let bad = list.bad_domains();
    // the reported verdict is the first non-good one, or good
    let mut verdicts: BTreeMap<&str, Verdict> = BTreeMap::new();
    for e in &list.entries {
        let v = verdicts.entry(e.domain.as_str()).or_insert(e.verdict);
        if !v.is_bad() {
            *v = e.verdict;
        }
    }
    let mut dropped: BTreeMap<&str, usize> = BTreeMap::new();
    let mut kept = Vec::new();
    for doc in docs {
        let domain = doc.domain.to_lowercase();
        if let Some(d) = bad.get(domain.as_str()) {
            *dropped.entry(d).or_default() += 1;
        } else {
            kept.push(doc);
        }
    }
    let rows = verdicts
        .into_iter()
        .map(|(domain, verdict)| RemovalRow {
            domain: domain.to_string(),
            verdict,
            dropped: dropped.get(domain).copied().unwrap_or(0),
        })
        .collect();
    (kept, RemovalReport { rows })
}
