//! Length filtering, label policies and removal lists.

mod classify;
mod labels;
mod removal;

pub use classify::{
    annotate_corpus, AnnotateStats, Classifier, ClassifierError, ClassifyRequest, ClassifyResponse, StubClassifier,
    StubMode, SubprocessClassifier, SCHEMA_ENV,
};
pub use labels::{apply_label_policy, LabelError, LabelSchema, GENRE_LABELS, GENRE_THRESHOLD, TOPIC_THRESHOLD};
pub use removal::{
    apply_removal_list, RemovalEntry, RemovalError, RemovalList, RemovalReport, RemovalRow, Verdict, REMOVAL_HEADER,
};

use crate::corpus::Document;
use std::fmt;

pub const MIN_WORDS: usize = 75;
pub const MIN_PARAGRAPH_CHARS: usize = 70;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DropReason {
    TooFewWords,
    OnlyShortParagraphs,
}

impl fmt::Display for DropReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DropReason::TooFewWords => "too_few_words",
            DropReason::OnlyShortParagraphs => "only_short_paragraphs",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterOutcome {
    Keep,
    Drop(DropReason),
}

/// Length filter over retained paragraphs. Both bounds are strict: a document
/// with exactly `min_words` words, or a paragraph with exactly
/// `min_par_chars` characters, passes.
pub fn filter_short(doc: &Document, min_words: usize, min_par_chars: usize) -> FilterOutcome {
    if doc.computed_word_count() < min_words {
        return FilterOutcome::Drop(DropReason::TooFewWords);
    }
    if doc.retained_paragraphs().all(|p| p.char_count < min_par_chars) {
        return FilterOutcome::Drop(DropReason::OnlyShortParagraphs);
    }
    FilterOutcome::Keep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Language, Paragraph, Quality};
    use chrono::Utc;
    use proptest::prelude::*;

    fn doc(paras: Vec<String>) -> Document {
        Document {
            id: "d".into(),
            url: "https://x.si/".into(),
            domain: "x.si".into(),
            tld: "si".into(),
            crawl_time: Utc::now(),
            paragraphs: paras
                .into_iter()
                .map(|t| Paragraph::new(t, Quality::Good, true))
                .collect(),
            language: Language::Sl,
            genre: None,
            topic: None,
            word_count: 0,
        }
    }

    /// `n` words of "beseda" padded into one paragraph.
    fn words(n: usize) -> String {
        vec!["beseda"; n].join(" ")
    }

    /// A paragraph of exactly `chars` characters made of `n` words.
    fn para(n: usize, chars: usize) -> String {
        let mut s = vec!["a"; n].join(" ");
        assert!(s.len() <= chars);
        while s.len() < chars {
            s.push('a');
        }
        s
    }

    #[test]
    fn word_boundary() {
        assert_eq!(
            filter_short(&doc(vec![words(74)]), 75, 70),
            FilterOutcome::Drop(DropReason::TooFewWords)
        );
        assert_eq!(filter_short(&doc(vec![words(75)]), 75, 70), FilterOutcome::Keep);
    }

    #[test]
    fn short_paragraph_boundary() {
        let short: Vec<String> = (0..4).map(|_| para(20, 69)).collect();
        let d = doc(short.clone());
        assert_eq!(d.computed_word_count(), 80);
        assert_eq!(
            filter_short(&d, 75, 70),
            FilterOutcome::Drop(DropReason::OnlyShortParagraphs)
        );
        let mut with_long = short;
        with_long.push(para(1, 70));
        assert_eq!(filter_short(&doc(with_long), 75, 70), FilterOutcome::Keep);
    }

    #[test]
    fn unretained_paragraphs_do_not_count() {
        let mut d = doc(vec![words(100)]);
        d.paragraphs[0].retained = false;
        assert_eq!(filter_short(&d, 75, 70), FilterOutcome::Drop(DropReason::TooFewWords));
    }

    proptest! {
        #[test]
        fn adding_a_paragraph_never_drops(
            paras in proptest::collection::vec((1usize..40, 0usize..120), 0..6),
            extra in (1usize..40, 0usize..120),
        ) {
            let mk = |(n, c): (usize, usize)| para(n, c.max(2 * n - 1));
            let mut d = doc(paras.into_iter().map(mk).collect());
            let before = filter_short(&d, MIN_WORDS, MIN_PARAGRAPH_CHARS);
            d.paragraphs.push(Paragraph::new(mk(extra), Quality::Good, true));
            let after = filter_short(&d, MIN_WORDS, MIN_PARAGRAPH_CHARS);
            prop_assert!(!(before == FilterOutcome::Keep && after != FilterOutcome::Keep));
        }
    }
}
