use super::LangidError;
use crate::corpus::Language;
use crate::extract::StopwordList;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, Write};

/// Discriminator languages in tie-breaking order.
pub const HBS_ORDER: [Language; 4] = [Language::Bs, Language::Cnr, Language::Hr, Language::Sr];

/// Parse a `word<TAB>count` wordlist. Blank lines are skipped; repeated words
/// have their counts summed.
pub fn parse_wordlist<R: BufRead>(reader: R) -> Result<BTreeMap<String, u64>, LangidError> {
    let mut out = BTreeMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let err = |message: &str| LangidError::Wordlist {
            line: i + 1,
            message: message.to_string(),
        };
        let (word, count) = line.split_once('\t').ok_or_else(|| err("missing TAB"))?;
        let count: u64 = count.trim().parse().map_err(|_| err("count is not an integer"))?;
        let word = word.trim().to_lowercase();
        if word.is_empty() {
            return Err(err("empty word"));
        }
        *out.entry(word).or_default() += count;
    }
    Ok(out)
}

pub fn write_wordlist<W: Write>(mut out: W, counts: &BTreeMap<String, u64>) -> std::io::Result<()> {
    for (w, c) in counts {
        writeln!(out, "{w}\t{c}")?;
    }
    Ok(())
}

/// Result of the HBS discriminator.
#[derive(Debug, Clone, PartialEq)]
pub struct HbsDecision {
    pub language: Language,
    pub log_scores: BTreeMap<Language, f64>,
    /// More than one language reached the winning score.
    pub tie: bool,
}

/// Naive Bayes over word wordlists for Bosnian, Montenegrin, Croatian and Serbian.
///
/// Add-one smoothing over the union vocabulary; uniform priors. Words absent
/// from every wordlist carry no evidence and are skipped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordlistNB {
    /// Per word: log P(word | language) in [`HBS_ORDER`] order.
    log_probs: BTreeMap<String, [f64; 4]>,
    log_prior: f64,
}

impl WordlistNB {
    pub fn from_counts(counts: &BTreeMap<Language, BTreeMap<String, u64>>) -> Result<Self, LangidError> {
        for lang in HBS_ORDER {
            if !counts.contains_key(&lang) {
                return Err(LangidError::MissingWordlist(lang));
            }
        }
        let vocab: BTreeSet<&String> = HBS_ORDER.iter().flat_map(|l| counts[l].keys()).collect();
        let v = vocab.len() as u64;
        let denoms: Vec<f64> = HBS_ORDER
            .iter()
            .map(|l| (counts[l].values().sum::<u64>() + v) as f64)
            .collect();
        let log_probs = vocab
            .into_iter()
            .map(|w| {
                let mut row = [0.0; 4];
                for (k, lang) in HBS_ORDER.iter().enumerate() {
                    let c = counts[lang].get(w).copied().unwrap_or(0);
                    row[k] = ((c + 1) as f64 / denoms[k]).ln();
                }
                (w.clone(), row)
            })
            .collect();
        Ok(Self {
            log_probs,
            log_prior: (1.0 / HBS_ORDER.len() as f64).ln(),
        })
    }

    /// Build wordlists by counting word forms in per-language texts.
    pub fn from_texts(texts: &BTreeMap<Language, &str>) -> Result<Self, LangidError> {
        let counts = texts
            .iter()
            .map(|(lang, text)| {
                let mut c: BTreeMap<String, u64> = BTreeMap::new();
                for w in StopwordList::words(text) {
                    *c.entry(w).or_default() += 1;
                }
                (*lang, c)
            })
            .collect();
        Self::from_counts(&counts)
    }

    pub fn log_prob(&self, word: &str, lang: Language) -> Option<f64> {
        let k = HBS_ORDER.iter().position(|l| *l == lang)?;
        self.log_probs.get(word).map(|row| row[k])
    }

    pub fn vocabulary_size(&self) -> usize {
        self.log_probs.len()
    }

    pub fn discriminate(&self, text: &str) -> Result<HbsDecision, LangidError> {
        let mut scores = [self.log_prior; 4];
        let mut n_words = 0usize;
        for w in StopwordList::words(text) {
            n_words += 1;
            if let Some(row) = self.log_probs.get(&w) {
                for k in 0..4 {
                    scores[k] += row[k];
                }
            }
        }
        if n_words == 0 {
            return Err(LangidError::NoWords);
        }
        let mut best = 0;
        for k in 1..4 {
            if scores[k] > scores[best] {
                best = k;
            }
        }
        let tie = scores.iter().filter(|s| **s == scores[best]).count() > 1;
        Ok(HbsDecision {
            language: HBS_ORDER[best],
            log_scores: HBS_ORDER.iter().copied().zip(scores).collect(),
            tie,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn toy() -> WordlistNB {
        let lists = [
            (Language::Bs, [("kahva", 2), ("hljeb", 1), ("sedmica", 1)]),
            (Language::Cnr, [("kafa", 2), ("hljeb", 1), ("đe", 1)]),
            (Language::Hr, [("kava", 2), ("kruh", 1), ("tjedan", 1)]),
            (Language::Sr, [("kafa", 2), ("hleb", 1), ("nedelja", 1)]),
        ];
        let counts = lists
            .iter()
            .map(|(l, ws)| (*l, ws.iter().map(|(w, c)| (w.to_string(), *c as u64)).collect()))
            .collect();
        WordlistNB::from_counts(&counts).unwrap()
    }

    #[test]
    fn toy_scores_match_hand_computation() {
        // union vocabulary = 10 words, each list totals 4 → denominator 14
        let d = toy().discriminate("Kafa, hljeb.").unwrap();
        let prior = 0.25f64.ln();
        let want = [
            (Language::Bs, prior + (1.0f64 / 14.0).ln() + (2.0f64 / 14.0).ln()),
            (Language::Cnr, prior + (3.0f64 / 14.0).ln() + (2.0f64 / 14.0).ln()),
            (Language::Hr, prior + (1.0f64 / 14.0).ln() + (1.0f64 / 14.0).ln()),
            (Language::Sr, prior + (3.0f64 / 14.0).ln() + (1.0f64 / 14.0).ln()),
        ];
        for (lang, v) in want {
            assert!((d.log_scores[&lang] - v).abs() < 1e-9, "{lang}");
        }
        assert_eq!(d.language, Language::Cnr);
        assert!(!d.tie);
    }

    #[test]
    fn dominant_wordlist_wins() {
        assert_eq!(toy().discriminate("kava kruh tjedan").unwrap().language, Language::Hr);
    }

    #[test]
    fn out_of_vocabulary_ties_to_bs() {
        let d = toy().discriminate("zzz qqq").unwrap();
        assert_eq!(d.language, Language::Bs);
        assert!(d.tie);
        let first = d.log_scores[&Language::Bs];
        assert!(d.log_scores.values().all(|s| *s == first));
    }

    #[test]
    fn no_words_is_error() {
        assert!(matches!(toy().discriminate(" 42 !! "), Err(LangidError::NoWords)));
    }

    #[test]
    fn every_word_finite_everywhere() {
        let m = toy();
        for w in ["kahva", "đe", "nedelja"] {
            for l in HBS_ORDER {
                assert!(m.log_prob(w, l).unwrap().is_finite());
            }
        }
    }

    #[test]
    fn wordlist_format() {
        let counts = parse_wordlist("kruh\t3\n\nKRUH\t2\ntjedan\t1\n".as_bytes()).unwrap();
        assert_eq!(counts["kruh"], 5);
        let mut buf = Vec::new();
        write_wordlist(&mut buf, &counts).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "kruh\t5\ntjedan\t1\n");
        assert!(matches!(
            parse_wordlist("kruh 3\n".as_bytes()),
            Err(LangidError::Wordlist { line: 1, .. })
        ));
        let missing: BTreeMap<Language, BTreeMap<String, u64>> = [(Language::Hr, counts)].into_iter().collect();
        assert!(matches!(
            WordlistNB::from_counts(&missing),
            Err(LangidError::MissingWordlist(Language::Bs))
        ));
    }

    /// Gap between the best and second-best score.
    fn margin(d: &HbsDecision) -> f64 {
        let mut v: Vec<f64> = d.log_scores.values().copied().collect();
        v.sort_by(|a, b| b.total_cmp(a));
        v[0] - v[1]
    }

    proptest! {
        #[test]
        fn duplicating_input_keeps_argmax(words in proptest::collection::vec(
            proptest::sample::select(vec!["kahva", "hljeb", "kafa", "kava", "kruh", "hleb", "đe", "tjedan", "nedelja", "x"]), 1..8)) {
            let m = toy();
            let text = words.join(" ");
            let once = m.discriminate(&text).unwrap();
            let twice = m.discriminate(&format!("{text} {text}")).unwrap();
            let prior = m.log_prior;
            for l in HBS_ORDER {
                let want = prior + 2.0 * (once.log_scores[&l] - prior);
                prop_assert!((twice.log_scores[&l] - want).abs() < 1e-9);
            }
            prop_assume!(margin(&once) > 1e-9);
            prop_assert_eq!(once.language, twice.language);
        }

        #[test]
        fn shared_shift_keeps_argmax(words in proptest::collection::vec(
            proptest::sample::select(vec!["kahva", "hljeb", "kafa", "kava", "kruh", "hleb"]), 1..8),
            shift in -5.0f64..5.0, target in proptest::sample::select(vec!["kafa", "hljeb", "kruh"])) {
            let m = toy();
            let mut shifted = m.clone();
            for v in shifted.log_probs.get_mut(target).unwrap().iter_mut() {
                *v += shift;
            }
            let text = words.join(" ");
            prop_assume!(margin(&m.discriminate(&text).unwrap()) > 1e-9);
            prop_assert_eq!(
                m.discriminate(&text).unwrap().language,
                shifted.discriminate(&text).unwrap().language
            );
        }
    }
}
