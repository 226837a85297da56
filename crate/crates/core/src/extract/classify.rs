use super::StopwordList;
use crate::corpus::Quality;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParamsError {
    #[error("require 0 <= stopwords_low <= stopwords_high <= 1 (got {low}, {high})")]
    StopwordBounds { low: f64, high: f64 },
    #[error("require length_low <= length_high (got {low}, {high})")]
    LengthBounds { low: usize, high: usize },
    #[error("max_link_density must lie in [0, 1] (got {0})")]
    LinkDensity(f64),
}

/// Boilerplate classifier thresholds.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtractionParams {
    pub length_low: usize,
    pub length_high: usize,
    pub stopwords_low: f64,
    pub stopwords_high: f64,
    pub max_link_density: f64,
    pub stopwords: StopwordList,
}

impl ExtractionParams {
    pub fn with_stopwords(stopwords: StopwordList) -> Self {
        Self {
            length_low: 70,
            length_high: 200,
            stopwords_low: 0.30,
            stopwords_high: 0.32,
            max_link_density: 0.20,
            stopwords,
        }
    }

    pub fn validate(&self) -> Result<(), ParamsError> {
        if !(0.0 <= self.stopwords_low && self.stopwords_low <= self.stopwords_high && self.stopwords_high <= 1.0) {
            return Err(ParamsError::StopwordBounds {
                low: self.stopwords_low,
                high: self.stopwords_high,
            });
        }
        if self.length_low > self.length_high {
            return Err(ParamsError::LengthBounds {
                low: self.length_low,
                high: self.length_high,
            });
        }
        if !(0.0..=1.0).contains(&self.max_link_density) {
            return Err(ParamsError::LinkDensity(self.max_link_density));
        }
        Ok(())
    }
}

impl Default for ExtractionParams {
    fn default() -> Self {
        Self::with_stopwords(StopwordList::default())
    }
}

/// Fraction of word tokens that are stopwords; 0 for text without words.
pub fn stopword_density(text: &str, stopwords: &StopwordList) -> f64 {
    let mut total = 0usize;
    let mut hits = 0usize;
    for word in StopwordList::words(text) {
        total += 1;
        if stopwords.contains(&word) {
            hits += 1;
        }
    }
    if total == 0 {
        0.0
    } else {
        hits as f64 / total as f64
    }
}

pub fn classify_paragraph(text: &str, link_density: f64, params: &ExtractionParams) -> Quality {
    if link_density > params.max_link_density {
        return Quality::Bad;
    }
    let chars = text.chars().count();
    if chars < params.length_low {
        return Quality::Short;
    }
    if stopword_density(text, &params.stopwords) >= params.stopwords_high && chars >= params.length_high {
        Quality::Good
    } else {
        Quality::NearGood
    }
}

/// Resolve short and near-good blocks by context: each becomes good iff the
/// nearest good/bad block on either side (skipping other short/near-good
/// blocks) is good; otherwise bad.
pub fn smooth_classes(classes: &[Quality]) -> Vec<Quality> {
    let is_final = |q: &Quality| matches!(q, Quality::Good | Quality::Bad);
    let mut prev_final = vec![None; classes.len()];
    let mut last = None;
    for (i, q) in classes.iter().enumerate() {
        prev_final[i] = last;
        if is_final(q) {
            last = Some(*q);
        }
    }
    let mut next_final = vec![None; classes.len()];
    last = None;
    for (i, q) in classes.iter().enumerate().rev() {
        next_final[i] = last;
        if is_final(q) {
            last = Some(*q);
        }
    }
    classes
        .iter()
        .enumerate()
        .map(|(i, q)| {
            if is_final(q) {
                *q
            } else if prev_final[i] == Some(Quality::Good) || next_final[i] == Some(Quality::Good) {
                Quality::Good
            } else {
                Quality::Bad
            }
        })
        .collect()
}
