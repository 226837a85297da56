//! External genre/topic classifier interface.
//!
//! Wire protocol: the classifier reads JSON lines `{"id": .., "text": ..}`
//! and answers with one JSON line `{"id": .., "probs": {label: p, ..}}` per
//! request. The subprocess client runs the command once per batch with the
//! schema name in the `FORGE_SCHEMA` environment variable.

use super::{apply_label_policy, LabelSchema};
use crate::corpus::{Document, Schema};
use crate::hash::stable_hash_str;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Write};
use std::process::{Command, Stdio};

pub const SCHEMA_ENV: &str = "FORGE_SCHEMA";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyRequest {
    pub id: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyResponse {
    pub id: String,
    pub probs: BTreeMap<String, f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum ClassifierError {
    #[error("classifier transport: {0}")]
    Transport(String),
    #[error("classifier returned malformed output: {0}")]
    Protocol(String),
}

pub trait Classifier {
    fn classify(&mut self, schema: Schema, batch: &[ClassifyRequest])
        -> Result<Vec<ClassifyResponse>, ClassifierError>;
}

#[derive(Debug, Clone, PartialEq)]
pub enum StubMode {
    /// Pseudo-random peaked distribution derived from the text hash.
    Hashed,
    Uniform,
    /// All mass on one label.
    OneHot(String),
}

/// Deterministic stand-in for the real classifiers.
#[derive(Debug, Clone)]
pub struct StubClassifier {
    pub mode: StubMode,
    genre: LabelSchema,
    topic: LabelSchema,
}

impl StubClassifier {
    pub fn new(mode: StubMode) -> Self {
        Self {
            mode,
            genre: LabelSchema::genre(),
            topic: LabelSchema::topic(),
        }
    }

    pub fn probabilities(&self, schema: Schema, text: &str) -> BTreeMap<String, f64> {
        let labels = match schema {
            Schema::Genre => &self.genre.labels,
            Schema::Topic => &self.topic.labels,
        };
        let weights: Vec<f64> = match &self.mode {
            StubMode::Uniform => vec![1.0; labels.len()],
            StubMode::OneHot(target) => labels.iter().map(|l| f64::from(u8::from(l == target))).collect(),
            StubMode::Hashed => {
                let key = stable_hash_str(text, 0);
                labels
                    .iter()
                    .map(|l| {
                        let h = stable_hash_str(&format!("{schema}\u{1f}{l}"), key);
                        // map to (0, 1] and sharpen so some texts clear the thresholds
                        let u = ((h >> 11) as f64 + 1.0) / (1u64 << 53) as f64;
                        u.powi(12)
                    })
                    .collect()
            }
        };
        let total: f64 = weights.iter().sum();
        labels
            .iter()
            .zip(weights)
            .map(|(l, w)| (l.clone(), if total > 0.0 { w / total } else { 0.0 }))
            .collect()
    }
}

impl Classifier for StubClassifier {
    fn classify(
        &mut self,
        schema: Schema,
        batch: &[ClassifyRequest],
    ) -> Result<Vec<ClassifyResponse>, ClassifierError> {
        Ok(batch
            .iter()
            .map(|r| ClassifyResponse {
                id: r.id.clone(),
                probs: self.probabilities(schema, &r.text),
            })
            .collect())
    }
}

/// Runs `sh -c <command>` per batch.
#[derive(Debug, Clone)]
pub struct SubprocessClassifier {
    pub command: String,
}

impl SubprocessClassifier {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
        }
    }
}

impl Classifier for SubprocessClassifier {
    fn classify(
        &mut self,
        schema: Schema,
        batch: &[ClassifyRequest],
    ) -> Result<Vec<ClassifyResponse>, ClassifierError> {
        let transport = |e: std::io::Error| ClassifierError::Transport(e.to_string());
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(&self.command)
            .env(SCHEMA_ENV, schema.to_string())
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(transport)?;
        let mut input = Vec::new();
        for r in batch {
            serde_json::to_writer(&mut input, r).map_err(|e| ClassifierError::Protocol(e.to_string()))?;
            input.push(b'\n');
        }
        let mut stdin = child.stdin.take().expect("piped stdin");
        let writer = std::thread::spawn(move || stdin.write_all(&input));
        let stdout = child.stdout.take().expect("piped stdout");
        let mut out = Vec::new();
        for line in BufReader::new(stdout).lines() {
            let line = line.map_err(transport)?;
            if line.trim().is_empty() {
                continue;
            }
            out.push(serde_json::from_str(&line).map_err(|e| ClassifierError::Protocol(e.to_string()))?);
        }
        let status = child.wait().map_err(transport)?;
        writer
            .join()
            .map_err(|_| ClassifierError::Transport("stdin writer panicked".into()))?
            .map_err(transport)?;
        if !status.success() {
            return Err(ClassifierError::Transport(format!(
                "`{}` exited with {status}",
                self.command
            )));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnnotateStats {
    pub genre_assigned: usize,
    pub topic_assigned: usize,
    pub genre_failed: usize,
    pub topic_failed: usize,
}

/// Attach genre and topic assignments. Documents the classifier fails on keep
/// the affected label absent; they are counted and logged, never dropped.
pub fn annotate_corpus(
    mut docs: Vec<Document>,
    classifier: &mut dyn Classifier,
    genre: &LabelSchema,
    topic: &LabelSchema,
    batch_size: usize,
) -> (Vec<Document>, AnnotateStats) {
    let mut stats = AnnotateStats::default();
    let batch_size = batch_size.max(1);
    for schema_set in [genre, topic] {
        let schema = schema_set.schema;
        let mut assigned = 0;
        let mut failed = 0;
        for chunk in docs.chunks_mut(batch_size) {
            let requests: Vec<ClassifyRequest> = chunk
                .iter()
                .map(|d| ClassifyRequest {
                    id: d.id.clone(),
                    text: d.text(),
                })
                .collect();
            let responses = match classifier.classify(schema, &requests) {
                Ok(r) => r,
                Err(e) => {
                    tracing::warn!(%schema, docs = chunk.len(), "skipping batch: {e}");
                    failed += chunk.len();
                    continue;
                }
            };
            let by_id: BTreeMap<&str, &ClassifyResponse> = responses.iter().map(|r| (r.id.as_str(), r)).collect();
            for doc in chunk.iter_mut() {
                let result = by_id
                    .get(doc.id.as_str())
                    .ok_or_else(|| "no response".to_string())
                    .and_then(|r| {
                        if let Some(l) = r.probs.keys().find(|l| !schema_set.contains(l)) {
                            return Err(format!("label `{l}` not in schema"));
                        }
                        apply_label_policy(&r.probs, schema).map_err(|e| e.to_string())
                    });
                match result {
                    Ok(a) => {
                        match schema {
                            Schema::Genre => doc.genre = Some(a),
                            Schema::Topic => doc.topic = Some(a),
                        }
                        assigned += 1;
                    }
                    Err(e) => {
                        tracing::warn!(%schema, id = %doc.id, "label left absent: {e}");
                        failed += 1;
                    }
                }
            }
        }
        match schema {
            Schema::Genre => (stats.genre_assigned, stats.genre_failed) = (assigned, failed),
            Schema::Topic => (stats.topic_assigned, stats.topic_failed) = (assigned, failed),
        }
    }
    (docs, stats)
}
