use crate::corpus::Language;
use std::collections::{BTreeSet, HashMap};

/// Frequent function words of one language.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopwordList {
    words: BTreeSet<String>,
}

impl StopwordList {
    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self {
            words: words.into_iter().map(|w| w.as_ref().to_lowercase()).collect(),
        }
    }

    /// The `top_n` most frequent word forms of a seed text (ties by form).
    pub fn from_seed(text: &str, top_n: usize) -> Self {
        let mut counts: HashMap<String, usize> = HashMap::new();
        for w in Self::words(text) {
            *counts.entry(w).or_default() += 1;
        }
        let mut ranked: Vec<(String, usize)> = counts.into_iter().collect();
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        Self {
            words: ranked.into_iter().take(top_n).map(|(w, _)| w).collect(),
        }
    }

    /// Top-500 list derived from the bundled seed text of `lang`.
    pub fn bundled(lang: Language) -> Self {
        Self::from_seed(bundled_seed(lang), 500)
    }

    /// Lowercased alphabetic word forms of `text`.
    pub fn words(text: &str) -> impl Iterator<Item = String> + '_ {
        text.split_whitespace().filter_map(|t| {
            let w: String = t.trim_matches(|c: char| !c.is_alphanumeric()).to_lowercase();
            (!w.is_empty() && w.chars().any(char::is_alphabetic)).then_some(w)
        })
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

/// Bundled seed text for a language (also the default identification training sample).
pub fn bundled_seed(lang: Language) -> &'static str {
    match lang {
        Language::Sl => include_str!("../../data/seed/sl.txt"),
        Language::Hr => include_str!("../../data/seed/hr.txt"),
        Language::Sr => include_str!("../../data/seed/sr.txt"),
        Language::Bs => include_str!("../../data/seed/bs.txt"),
        Language::Cnr => include_str!("../../data/seed/cnr.txt"),
        Language::Bg => include_str!("../../data/seed/bg.txt"),
        Language::Mk => include_str!("../../data/seed/mk.txt"),
        Language::Hbs => concat!(
            include_str!("../../data/seed/bs.txt"),
            include_str!("../../data/seed/cnr.txt"),
            include_str!("../../data/seed/hr.txt"),
            include_str!("../../data/seed/sr.txt"),
        ),
        Language::Other => include_str!("../../data/seed/en.txt"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_by_frequency() {
        let s = StopwordList::from_seed("the cat and the dog and the bird", 2);
        assert!(s.contains("the") && s.contains("and"));
        assert!(!s.contains("cat"));
    }

    #[test]
    fn words_strip_punctuation() {
        let w: Vec<_> = StopwordList::words("Da, (in) 2024 — je!").collect();
        assert_eq!(w, vec!["da", "in", "je"]);
    }

    #[test]
    fn bundled_lists_nonempty() {
        for lang in Language::CORPORA {
            assert!(StopwordList::bundled(lang).len() > 50, "{lang}");
        }
    }
}
