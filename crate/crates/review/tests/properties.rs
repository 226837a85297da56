use chrono::{TimeZone, Utc};
use forge_core::corpus::{Document, Language, Paragraph, Quality};
use forge_core::refine::{apply_removal_list, Verdict};
use forge_review::{replay, Corpus, ReviewState, VerdictLog};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn docs(sizes: &[usize]) -> Vec<Document> {
    let mut out = Vec::new();
    for (i, &n) in sizes.iter().enumerate() {
        for k in 0..n {
            let text = "beseda ".repeat(1 + (i + k) % 7);
            out.push(Document {
                id: format!("{:05}", out.len()),
                url: format!("https://d{i}.si/{k}"),
                domain: format!("d{i}.si"),
                tld: "si".into(),
                crawl_time: Utc.with_ymd_and_hms(2024, 5, 1, 0, 0, 0).unwrap(),
                word_count: text.split_whitespace().count(),
                paragraphs: vec![Paragraph::new(text, Quality::Good, true)],
                language: Language::Sl,
                genre: None,
                topic: None,
            });
        }
    }
    out
}

fn fresh(dir: &std::path::Path, docs: Vec<Document>) -> ReviewState {
    let (log, records) = VerdictLog::open(dir.join("log.jsonl")).unwrap();
    ReviewState::new(vec![Corpus::new("c", docs)], log, &records).unwrap()
}

fn arb_verdict() -> impl Strategy<Value = Verdict> {
    prop::sample::select(Verdict::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn replay_reconstructs_active_verdicts(
        sizes in prop::collection::vec(1usize..6, 1..8),
        ops in prop::collection::vec((0usize..8, arb_verdict()), 0..25),
    ) {
        let dir = tempfile::tempdir().unwrap();
        let corpus = docs(&sizes);
        let s = fresh(dir.path(), corpus.clone());
        for (d, v) in &ops {
            let domain = format!("d{}.si", d % sizes.len());
            s.record_verdict("c", &domain, v.as_str(), "", "x").unwrap();
        }
        let live = s.active_verdicts();
        drop(s);
        let records = forge_review::read_log(&dir.path().join("log.jsonl")).unwrap();
        prop_assert_eq!(records.len(), ops.len());
        prop_assert_eq!(&replay(&records), &live);
        prop_assert_eq!(fresh(dir.path(), corpus).active_verdicts(), live);
    }

    #[test]
    fn removal_export_drops_exactly_bad_domains(
        sizes in prop::collection::vec(1usize..6, 1..8),
        ops in prop::collection::vec((0usize..8, arb_verdict()), 0..25),
    ) {
        let dir = tempfile::tempdir().unwrap();
        let corpus = docs(&sizes);
        let s = fresh(dir.path(), corpus.clone());
        for (d, v) in &ops {
            s.record_verdict("c", &format!("d{}.si", d % sizes.len()), v.as_str(), "", "x").unwrap();
        }
        let bad: BTreeSet<String> = s.active_verdicts().get("c").map(|m| {
            m.values().filter(|e| e.verdict.is_bad()).map(|e| e.domain.clone()).collect()
        }).unwrap_or_default();
        let (kept, _) = apply_removal_list(corpus.clone(), &s.removal_list("c").unwrap());
        let want: Vec<Document> = corpus.into_iter().filter(|d| !bad.contains(&d.domain)).collect();
        prop_assert_eq!(kept, want);
    }

    #[test]
    fn degradation_monotone_in_bad_marks(
        sizes in prop::collection::vec(1usize..20, 1..10),
        order in Just(()).prop_perturb(|_, mut rng| {
            let mut v: Vec<usize> = (0..10).collect();
            for i in (1..v.len()).rev() {
                v.swap(i, rng.random_range(0..=i));
            }
            v
        }),
        bad in prop::sample::select(vec![Verdict::MachineTranslated, Verdict::Generated, Verdict::EncodingBroken]),
        top in 1usize..12,
    ) {
        let dir = tempfile::tempdir().unwrap();
        let s = fresh(dir.path(), docs(&sizes));
        let mut last = s.degradation("c", top).unwrap();
        prop_assert_eq!(last.bad_texts_pct, 0.0);
        for d in order.into_iter().filter(|&d| d < sizes.len()) {
            s.record_verdict("c", &format!("d{d}.si"), bad.as_str(), "", "x").unwrap();
            let now = s.degradation("c", top).unwrap();
            prop_assert!(now.bad_texts_pct >= last.bad_texts_pct);
            prop_assert!(now.bad_words_pct >= last.bad_words_pct);
            prop_assert!(now.bad_texts_pct <= 100.0 + 1e-9);
            last = now;
        }
    }
}
