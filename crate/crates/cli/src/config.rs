//! `extract.cfg`: TOML with optional overrides of the extraction defaults.
//!
//! ```toml
//! language = "sl"            # bundled stopword list
//! stopwords = "sl.txt"       # or one stopword per line, relative to this file
//! length_low = 70
//! length_high = 200
//! stopwords_low = 0.30
//! stopwords_high = 0.32
//! max_link_density = 0.20
//! ```

use anyhow::{Context, Result};
use forge_core::extract::{ExtractionParams, StopwordList};
use forge_core::Language;
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtractConfig {
    pub language: Option<String>,
    pub stopwords: Option<String>,
    pub length_low: Option<usize>,
    pub length_high: Option<usize>,
    pub stopwords_low: Option<f64>,
    pub stopwords_high: Option<f64>,
    pub max_link_density: Option<f64>,
}

impl ExtractConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// Resolve into validated parameters. `base` anchors a relative stopword path.
    pub fn params(&self, default_lang: Language, base: &Path) -> Result<ExtractionParams> {
        let stopwords = match (&self.stopwords, &self.language) {
            (Some(file), _) => {
                let path = base.join(file);
                let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                StopwordList::from_words(
                    text.lines()
                        .map(str::trim)
                        .filter(|l| !l.is_empty() && !l.starts_with('#')),
                )
            }
            (None, Some(code)) => StopwordList::bundled(code.parse()?),
            (None, None) => StopwordList::bundled(default_lang),
        };
        let mut p = ExtractionParams::with_stopwords(stopwords);
        if let Some(v) = self.length_low {
            p.length_low = v;
        }
        if let Some(v) = self.length_high {
            p.length_high = v;
        }
        if let Some(v) = self.stopwords_low {
            p.stopwords_low = v;
        }
        if let Some(v) = self.stopwords_high {
            p.stopwords_high = v;
        }
        if let Some(v) = self.max_link_density {
            p.max_link_density = v;
        }
        p.validate()?;
        Ok(p)
    }
}
