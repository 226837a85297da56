use chrono::{DateTime, Utc};
use forge_core::refine::{RemovalEntry, Verdict};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::ReviewError;

/// One line of the verdict log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoggedVerdict {
    pub corpus: String,
    pub domain: String,
    pub verdict: Verdict,
    pub reason: String,
    pub reviewer: String,
    pub time: DateTime<Utc>,
}

impl LoggedVerdict {
    pub fn entry(&self) -> RemovalEntry {
        RemovalEntry {
            domain: self.domain.clone(),
            verdict: self.verdict,
            reason: self.reason.clone(),
            reviewer: self.reviewer.clone(),
            time: self.time,
        }
    }
}

/// Active verdict per corpus and domain; later records supersede earlier ones.
pub type ActiveVerdicts = BTreeMap<String, BTreeMap<String, RemovalEntry>>;

/// Fold log records into the active-verdict map.
pub fn replay<'a>(records: impl IntoIterator<Item = &'a LoggedVerdict>) -> ActiveVerdicts {
    let mut active = ActiveVerdicts::new();
    for r in records {
        active
            .entry(r.corpus.clone())
            .or_default()
            .insert(r.domain.clone(), r.entry());
    }
    active
}

/// Append-only JSONL verdict log. A missing file is an empty log.
#[derive(Debug)]
pub struct VerdictLog {
    path: PathBuf,
    file: File,
}

impl VerdictLog {
    /// Open (creating if needed) and return the records already on disk.
    /// A torn final line left by an interrupted write is cut off.
    pub fn open(path: impl AsRef<Path>) -> Result<(Self, Vec<LoggedVerdict>), ReviewError> {
        let path = path.as_ref().to_path_buf();
        let mut text = if path.exists() {
            std::fs::read_to_string(&path)?
        } else {
            String::new()
        };
        if !text.is_empty() && !text.ends_with('\n') {
            let keep = text.rfind('\n').map_or(0, |i| i + 1);
            tracing::warn!(path = %path.display(), "dropping torn final line of verdict log");
            text.truncate(keep);
            OpenOptions::new().write(true).open(&path)?.set_len(keep as u64)?;
        }
        let records = parse_log(&text)?;
        let file = OpenOptions::new().create(true).append(true).open(&path)?;
        Ok((Self { path, file }, records))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Write one record and flush it to disk before returning.
    pub fn append(&mut self, record: &LoggedVerdict) -> Result<(), ReviewError> {
        let mut line = serde_json::to_string(record).expect("verdict serializes");
        line.push('\n');
        self.file.write_all(line.as_bytes())?;
        self.file.sync_data()?;
        Ok(())
    }
}

pub fn read_log(path: &Path) -> Result<Vec<LoggedVerdict>, ReviewError> {
    parse_log(&std::fs::read_to_string(path)?)
}

fn parse_log(text: &str) -> Result<Vec<LoggedVerdict>, ReviewError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(line).map_err(|source| ReviewError::Log { line: i + 1, source })?;
        out.push(rec);
    }
    Ok(out)
}
