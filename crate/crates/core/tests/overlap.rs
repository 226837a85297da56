use chrono::{TimeZone, Utc};
use forge_core::corpus::{Document, Language, Paragraph, Quality};
use forge_core::dedup::{MinHasher, DEFAULT_THRESHOLD};
use forge_core::diff::{compare_versions, text_overlap, write_report};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn text(rng: &mut ChaCha8Rng) -> String {
    (0..60)
        .map(|_| (0..6).map(|_| rng.random_range('a'..='z')).collect::<String>())
        .collect::<Vec<_>>()
        .join(" ")
}

fn doc(id: String, url: String, text: String) -> Document {
    let mut d = Document {
        id,
        domain: url.split('/').nth(2).unwrap().to_string(),
        url,
        tld: "si".into(),
        crawl_time: Utc.with_ymd_and_hms(2024, 1, 1, 0, 0, 0).unwrap(),
        paragraphs: vec![Paragraph::new(text, Quality::Good, true)],
        language: Language::Sl,
        genre: None,
        topic: None,
        word_count: 0,
    };
    d.refresh_word_count();
    d
}

/// A has 80 docs; B has 100 of which the first 30 copy A's first 30 texts
/// (with the same URLs).
fn planted(seed: u64) -> (Vec<Document>, Vec<Document>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a: Vec<Document> = (0..80)
        .map(|i| doc(format!("a{i:03}"), format!("https://v.si/a/{i}"), text(&mut rng)))
        .collect();
    let b: Vec<Document> = (0..100)
        .map(|i| {
            if i < 30 {
                doc(format!("b{i:03}"), a[i].url.clone(), a[i].text())
            } else {
                doc(format!("b{i:03}"), format!("https://v.si/b/{i}"), text(&mut rng))
            }
        })
        .collect();
    (a, b)
}

#[test]
fn planted_two_version_fixture() {
    let (a, b) = planted(5);
    let r = text_overlap(&a, &b, DEFAULT_THRESHOLD, &MinHasher::default()).unwrap();
    assert_eq!(r.shared_pairs, 30);
    assert_eq!(r.unique_in_b_pct, 70.0);
    assert_eq!(r.unique_in_a_pct, 62.5);
    assert_eq!(r.merged_total, 150);
    for p in &r.pairs {
        assert_eq!(p.id_a[1..], p.id_b[1..], "false match {p:?}");
    }
    assert_eq!(r.url_overlap_a_pct, 37.5);
    assert_eq!(r.url_overlap_b_pct, 30.0);
}

#[test]
fn identity_and_disjoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let a: Vec<Document> = (0..50)
        .map(|i| doc(format!("x{i}"), format!("https://x.si/{i}"), text(&mut rng)))
        .collect();
    let r = text_overlap(&a, &a, DEFAULT_THRESHOLD, &MinHasher::default()).unwrap();
    assert_eq!((r.unique_in_a_pct, r.unique_in_b_pct, r.merged_total), (0.0, 0.0, 50));

    let a: Vec<Document> = (0..40)
        .map(|i| doc(format!("p{i}"), format!("https://p.si/{i}"), text(&mut rng)))
        .collect();
    let b: Vec<Document> = (0..60)
        .map(|i| doc(format!("q{i}"), format!("https://q.si/{i}"), text(&mut rng)))
        .collect();
    let r = text_overlap(&a, &b, DEFAULT_THRESHOLD, &MinHasher::default()).unwrap();
    assert_eq!(
        (r.unique_in_a_pct, r.unique_in_b_pct, r.merged_total),
        (100.0, 100.0, 100)
    );
    assert!(text_overlap(&[], &b, 0.7, &MinHasher::default()).is_err());
}

#[test]
fn version_report_files() {
    let corpora: Vec<(String, Vec<Document>, Vec<Document>)> = (0..3)
        .map(|k| {
            let (a, mut b) = planted(k);
            b.truncate(60 + 10 * k as usize);
            (format!("c{k}"), a, b)
        })
        .collect();
    let cmp = compare_versions(&corpora, DEFAULT_THRESHOLD, &MinHasher::default()).unwrap();
    assert_eq!(cmp.pairs.len(), 3);
    // URL overlap of B equals its shared-text share here, so the fit is y = x
    let m = cmp.regression.as_ref().unwrap();
    assert!(m.intercept.abs() < 1e-9 && (m.slope - 1.0).abs() < 1e-9, "{m:?}");
    assert!((cmp.pairs[0].texts_change_pct + 25.0).abs() < 1e-9);
    let dir = tempfile::tempdir().unwrap();
    write_report(dir.path(), &cmp).unwrap();
    let tsv = std::fs::read_to_string(dir.path().join("overlap.tsv")).unwrap();
    assert_eq!(tsv.lines().count(), 4);
    assert!(tsv
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("c0\t80\t60\t30\t62.5000\t50.0000\t"));
    let pairs = std::fs::read_to_string(dir.path().join("pairs.tsv")).unwrap();
    assert_eq!(pairs.lines().count(), 1 + 90);
    let summary: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["corpora"][1]["overlap"]["merged_total"], 120);
}
