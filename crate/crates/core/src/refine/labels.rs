use crate::corpus::{LabelAssignment, Schema, MIX_LABEL};
use std::collections::BTreeMap;
use std::path::Path;

pub const GENRE_LABELS: [&str; 9] = [
    "Information/Explanation",
    "Instruction",
    "News",
    "Legal",
    "Promotion",
    "Opinion/Argumentation",
    "Prose/Lyrical",
    "Forum",
    "Other",
];

/// Genre keeps its label only when the top probability exceeds this.
pub const GENRE_THRESHOLD: f64 = 0.8;
/// Topic keeps its label when the top probability reaches this.
pub const TOPIC_THRESHOLD: f64 = 0.6;

const BUNDLED_TOPICS: &str = include_str!("../../data/topic_labels.txt");

#[derive(Debug, thiserror::Error)]
pub enum LabelError {
    #[error("empty probability map")]
    Empty,
    #[error("probability {probability} for `{label}` is outside [0, 1]")]
    OutOfRange { label: String, probability: f64 },
    #[error("label `{0}` is not in the {1} schema")]
    UnknownLabel(String, Schema),
    #[error("schema file has no labels")]
    EmptySchema,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Ordered label set for one schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSchema {
    pub schema: Schema,
    pub labels: Vec<String>,
}

impl LabelSchema {
    pub fn genre() -> Self {
        Self {
            schema: Schema::Genre,
            labels: GENRE_LABELS.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn topic() -> Self {
        Self::parse(Schema::Topic, BUNDLED_TOPICS).expect("bundled topic schema")
    }

    /// One label per line; blank lines and `#` comments are ignored.
    pub fn parse(schema: Schema, text: &str) -> Result<Self, LabelError> {
        let labels: Vec<String> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(String::from)
            .collect();
        if labels.is_empty() {
            return Err(LabelError::EmptySchema);
        }
        Ok(Self { schema, labels })
    }

    pub fn load(schema: Schema, path: &Path) -> Result<Self, LabelError> {
        Self::parse(schema, &std::fs::read_to_string(path)?)
    }

    pub fn for_schema(schema: Schema) -> Self {
        match schema {
            Schema::Genre => Self::genre(),
            Schema::Topic => Self::topic(),
        }
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }
}

/// Pick the argmax label, or Mix when it is not confident enough. The
/// probability field always carries the top probability. Ties go to the
/// lexicographically smallest label.
pub fn apply_label_policy(probs: &BTreeMap<String, f64>, schema: Schema) -> Result<LabelAssignment, LabelError> {
    let mut best: Option<(&String, f64)> = None;
    for (label, &p) in probs {
        if !(0.0..=1.0).contains(&p) {
            return Err(LabelError::OutOfRange {
                label: label.clone(),
                probability: p,
            });
        }
        if best.is_none_or(|(_, b)| p > b) {
            best = Some((label, p));
        }
    }
    let (label, p) = best.ok_or(LabelError::Empty)?;
    let confident = match schema {
        Schema::Genre => p > GENRE_THRESHOLD,
        Schema::Topic => p >= TOPIC_THRESHOLD,
    };
    Ok(LabelAssignment {
        label: if confident {
            label.clone()
        } else {
            MIX_LABEL.to_string()
        },
        probability: p,
        schema,
    })
}
