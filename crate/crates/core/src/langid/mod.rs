//! Language identification: two independent character-level voters, a
//! wordlist Naive Bayes discriminator for the HBS languages, and TLD routing.

mod char_ngram;
mod rank_profile;
mod route;
mod wordlist_nb;

pub use char_ngram::CharNgramModel;
pub use rank_profile::{RankProfileModel, PROFILE_SIZE};
pub use route::{national_corpus, route_document, Route};
pub use wordlist_nb::{parse_wordlist, write_wordlist, HbsDecision, WordlistNB, HBS_ORDER};

use crate::corpus::{Document, Language};
use crate::extract::bundled_seed;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

pub const MIN_TRAINING_CHARS: usize = 1000;
pub const MIN_IDENTIFY_CHARS: usize = 10;
pub const MODEL_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum LangidError {
    #[error("training sample for `{language}` has {chars} characters; at least {MIN_TRAINING_CHARS} required")]
    SampleTooSmall { language: Language, chars: usize },
    #[error("no training samples given")]
    NoSamples,
    #[error("text has {0} characters; at least {MIN_IDENTIFY_CHARS} required")]
    TextTooShort(usize),
    #[error("text contains no word tokens")]
    NoWords,
    #[error("wordlist line {line}: {message}")]
    Wordlist { line: usize, message: String },
    #[error("wordlists must cover bs, cnr, hr and sr (missing {0})")]
    MissingWordlist(Language),
    #[error("model file {path}: {message}")]
    Model { path: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Output of the two general-purpose voters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Identification {
    /// Character trigram model's decision.
    pub language: Language,
    /// Whether the rank-profile model picked the same language.
    pub agreed: bool,
}

/// Normalize text for character n-gram extraction: lowercase letters, every
/// non-letter run collapsed to a single space.
pub(crate) fn normalize_for_ngrams(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut space = true;
    for c in text.chars() {
        if c.is_alphabetic() {
            out.extend(c.to_lowercase());
            space = false;
        } else if !space {
            out.push(' ');
            space = true;
        }
    }
    if out.ends_with(' ') {
        out.pop();
    }
    out
}

fn check_samples(samples: &BTreeMap<Language, String>) -> Result<(), LangidError> {
    if samples.is_empty() {
        return Err(LangidError::NoSamples);
    }
    for (lang, text) in samples {
        let chars = text.chars().count();
        if chars < MIN_TRAINING_CHARS {
            return Err(LangidError::SampleTooSmall { language: *lang, chars });
        }
    }
    Ok(())
}

pub fn identify_language(
    text: &str,
    char_model: &CharNgramModel,
    rank_model: &RankProfileModel,
) -> Result<Identification, LangidError> {
    let chars = text.trim().chars().count();
    if chars < MIN_IDENTIFY_CHARS {
        return Err(LangidError::TextTooShort(chars));
    }
    let language = char_model.identify(text);
    let agreed = rank_model.identify(text) == language;
    Ok(Identification { language, agreed })
}

/// The three trained models used by the `langid` stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LangidModels {
    pub char_ngram: CharNgramModel,
    pub rank_profile: RankProfileModel,
    pub hbs: WordlistNB,
}

const CHAR_FILE: &str = "char_ngram.json";
const RANK_FILE: &str = "rank_profile.json";
const HBS_FILE: &str = "hbs_wordlist.json";

#[derive(Serialize, Deserialize)]
struct Versioned<T> {
    version: u32,
    model: T,
}

fn save_json<T: Serialize>(dir: &Path, name: &str, model: &T) -> Result<(), LangidError> {
    let path = dir.join(name);
    let json = serde_json::to_vec(&Versioned {
        version: MODEL_VERSION,
        model,
    })
    .map_err(|e| LangidError::Model {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    fs::write(path, json)?;
    Ok(())
}

fn load_json<T: for<'de> Deserialize<'de>>(dir: &Path, name: &str) -> Result<T, LangidError> {
    let path = dir.join(name);
    let err = |message: String| LangidError::Model {
        path: path.display().to_string(),
        message,
    };
    let bytes = fs::read(&path)?;
    let v: Versioned<T> = serde_json::from_slice(&bytes).map_err(|e| err(e.to_string()))?;
    if v.version != MODEL_VERSION {
        return Err(err(format!("unsupported model version {}", v.version)));
    }
    Ok(v.model)
}

impl LangidModels {
    /// Train from the bundled seed texts: `sl`, `bg`, `mk`, the HBS
    /// macro-language and `other` for the voters; one wordlist per HBS
    /// language for the discriminator.
    pub fn train_bundled() -> Result<Self, LangidError> {
        let samples: BTreeMap<Language, String> =
            [Language::Sl, Language::Bg, Language::Mk, Language::Hbs, Language::Other]
                .into_iter()
                .map(|l| (l, bundled_seed(l).to_string()))
                .collect();
        let hbs_texts: BTreeMap<Language, &str> = HBS_ORDER.iter().map(|l| (*l, bundled_seed(*l))).collect();
        Ok(Self {
            char_ngram: CharNgramModel::train(&samples)?,
            rank_profile: RankProfileModel::train(&samples)?,
            hbs: WordlistNB::from_texts(&hbs_texts)?,
        })
    }

    pub fn save(&self, dir: &Path) -> Result<(), LangidError> {
        fs::create_dir_all(dir)?;
        save_json(dir, CHAR_FILE, &self.char_ngram)?;
        save_json(dir, RANK_FILE, &self.rank_profile)?;
        save_json(dir, HBS_FILE, &self.hbs)
    }

    pub fn load(dir: &Path) -> Result<Self, LangidError> {
        Ok(Self {
            char_ngram: load_json(dir, CHAR_FILE)?,
            rank_profile: load_json(dir, RANK_FILE)?,
            hbs: load_json(dir, HBS_FILE)?,
        })
    }

    pub fn identify(&self, text: &str) -> Result<Identification, LangidError> {
        identify_language(text, &self.char_ngram, &self.rank_profile)
    }

    /// Route a document and, when it lands in `target`, un-retain paragraphs
    /// the voters do not jointly attribute to the target language. Paragraphs
    /// too short to identify are left alone.
    pub fn process(&self, mut doc: Document, target: Language) -> Option<Document> {
        let text = doc.text();
        let ids = self.identify(&text).ok();
        let hbs = match ids {
            Some(Identification {
                language: Language::Hbs,
                agreed: true,
            }) => self.hbs.discriminate(&text).ok(),
            _ => None,
        };
        match route_document(&doc, ids.as_ref(), hbs.as_ref()) {
            Route::Corpus(lang) if lang == target => {}
            _ => return None,
        }
        let want = target.macro_language();
        for p in doc.paragraphs.iter_mut().filter(|p| p.retained) {
            if let Ok(id) = self.identify(&p.text) {
                if !(id.agreed && id.language == want) {
                    p.retained = false;
                }
            }
        }
        doc.language = target;
        doc.refresh_word_count();
        Some(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        assert_eq!(normalize_for_ngrams("  Dober DAN, 2024!  ok "), "dober dan ok");
        assert_eq!(normalize_for_ngrams("123"), "");
    }

    #[test]
    fn short_text_is_undecidable() {
        let m = LangidModels::train_bundled().unwrap();
        assert!(matches!(m.identify("123456789"), Err(LangidError::TextTooShort(9))));
        assert!(m.identify("Slovenija je").is_ok());
    }

    #[test]
    fn bundled_models_recognize_their_languages() {
        let m = LangidModels::train_bundled().unwrap();
        let cases = [
            (
                "Vlada je sprejela nov zakon o varstvu okolja in občine bodo dobile več denarja.",
                Language::Sl,
            ),
            (
                "Vlada je predstavila novi proračun koji predviđa veća ulaganja u zdravstvo.",
                Language::Hbs,
            ),
            (
                "Правителството представи новия бюджет за следващата година.",
                Language::Bg,
            ),
            ("Владата го претстави новиот буџет за следната година.", Language::Mk),
            (
                "The council approved a new plan to improve public transport.",
                Language::Other,
            ),
        ];
        for (text, want) in cases {
            let id = m.identify(text).unwrap();
            assert_eq!(id.language, want, "{text}");
            assert!(id.agreed, "{text}");
        }
    }

    #[test]
    fn models_round_trip_on_disk() {
        let m = LangidModels::train_bundled().unwrap();
        let dir = tempfile::tempdir().unwrap();
        m.save(dir.path()).unwrap();
        assert_eq!(LangidModels::load(dir.path()).unwrap(), m);
    }
}
